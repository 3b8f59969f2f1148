use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polspin::cli::{self, CliError, ConvertTarget, DEFAULT_TOLERANCE};
use polspin_core::Basis;

/// Spinor polarization calculus: conversions, filter trains, Poincaré traces.
#[derive(Debug, Parser)]
#[command(name = "polspin", version)]
struct Args {
    /// Basis used for intermediate matrices.
    #[arg(long, global = true, value_enum, default_value_t = BasisArg::Circular)]
    basis: BasisArg,
    /// Orthogonality threshold for phase comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisArg {
    Circular,
    Linear,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Circular => Basis::Circular,
            BasisArg::Linear => Basis::Linear,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a beam in another representation.
    Convert {
        /// Beam JSON, or @file.
        #[arg(long)]
        beam: String,
        #[arg(long, value_enum)]
        to: ConvertTarget,
    },
    /// Trace a beam through a train file as CSV.
    Trace {
        train: PathBuf,
        /// Beam JSON or @file; defaults to the beams declared in the train.
        #[arg(long)]
        beam: Option<String>,
    },
    /// Print the Mueller matrix of a train file as CSV.
    Mueller { train: PathBuf },
    /// Split a Stokes beam into its eigen-polarizations.
    Decompose {
        #[arg(long)]
        beam: String,
    },
    /// Pancharatnam phase of beam B relative to beam A.
    Phase {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

fn run(args: &Args) -> Result<String, CliError> {
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(CliError::input(
            "--tolerance must be a finite nonnegative number",
        ));
    }
    let basis = Basis::from(args.basis);
    let with_train = |path: &PathBuf| {
        let (doc, warnings) = cli::read_train(path)?;
        for w in warnings {
            eprintln!("{}:{w}", path.display());
        }
        Ok::<_, CliError>(doc)
    };
    match &args.command {
        Command::Convert { beam, to } => cli::cmd_convert(&cli::read_beam_arg(beam)?, *to, basis),
        Command::Trace { train, beam } => {
            let beam = beam.as_deref().map(cli::read_beam_arg).transpose()?;
            cli::cmd_trace(&with_train(train)?, beam.as_ref(), basis, args.tolerance)
        }
        Command::Mueller { train } => cli::cmd_mueller(&with_train(train)?, basis),
        Command::Decompose { beam } => cli::cmd_decompose(&cli::read_beam_arg(beam)?),
        Command::Phase { a, b } => cli::cmd_phase(
            &cli::read_beam_arg(a)?,
            &cli::read_beam_arg(b)?,
            args.tolerance,
        ),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = run(&args).and_then(|text| match &args.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write `{}`: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::input(format!("cannot write output: {e}"))),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polspin: error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
