//! The `polspin` subcommands as plain functions returning their output text.
//!
//! Exit codes: 0 success, 2 input error, 3 extinction, 4 undefined phase.

use std::path::Path;

use polspin_core::filters::matrix_in;
use polspin_core::{
    angles_from_spinor, apply_filter_to_coherency, coherency_from_stokes, degree_of_polarization,
    eig_decompose, jones_from_wave, mueller_of_train, poincare_frame,
    spinor::pancharatnam_phase_with_tolerance, stokes_from_coherency, stokes_from_wave, Basis,
    CoherencyMatrix, FilterElement, PolError, StokesVector, Vec3, WaveState,
};
use serde_json::json;

use crate::beam::{Beam, BeamSpec};
use crate::dsl::{parse_train, ParseDiagnostic, TrainDocument};
use crate::format::{csv_row, fmt_f64};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EXTINCTION: i32 = 3;
pub const EXIT_UNDEFINED_PHASE: i32 = 4;

/// Default threshold below which `|⟨a, b⟩|` counts as orthogonal.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// `polspin phase` reports `in_phase` when `|phase|` is below this.
pub const IN_PHASE_TOL: f64 = 1e-9;

pub const TRACE_HEADER: &str = "step,element,rx,ry,rz,mx,my,mz,s0,s1,s2,s3,phase";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<PolError> for CliError {
    fn from(e: PolError) -> CliError {
        let code = match e {
            PolError::Extinction => EXIT_EXTINCTION,
            PolError::OrthogonalStates => EXIT_UNDEFINED_PHASE,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConvertTarget {
    Angles,
    Stokes,
    Jones,
    Spinor,
    Coherency,
}

/// Reads a beam argument: inline JSON, or `@path` for a JSON file.
pub fn read_beam_arg(arg: &str) -> Result<BeamSpec, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read beam file `{path}`: {e}")))?,
        None => arg.to_owned(),
    };
    BeamSpec::from_json(&text).map_err(|e| CliError::input(format!("malformed beam JSON: {e}")))
}

/// Parses a train source. Errors fail the whole file; warnings are returned.
pub fn load_train(
    name: &str,
    source: &[u8],
) -> Result<(TrainDocument, Vec<ParseDiagnostic>), CliError> {
    let outcome = parse_train(source);
    if outcome.has_errors() {
        let report: Vec<String> = outcome.errors().map(|d| format!("{name}:{d}")).collect();
        return Err(CliError::input(report.join("\n")));
    }
    Ok((outcome.document, outcome.diagnostics))
}

pub fn read_train(path: &Path) -> Result<(TrainDocument, Vec<ParseDiagnostic>), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::input(format!("cannot read `{}`: {e}", path.display())))?;
    load_train(&path.display().to_string(), &bytes)
}

fn line(value: serde_json::Value) -> String {
    let mut s = value.to_string();
    s.push('\n');
    s
}

fn pure(beam: Beam) -> Result<WaveState, CliError> {
    match beam {
        Beam::Pure(w) => Ok(w),
        Beam::Mixed(_) => Err(PolError::MixedState.into()),
    }
}

fn basis_name(basis: Basis) -> &'static str {
    match basis {
        Basis::Circular => "circular",
        Basis::Linear => "linear",
    }
}

/// `polspin convert`: prints the beam in the requested representation.
///
/// The `angles`, `stokes` and `jones` outputs are themselves beam JSON.
pub fn cmd_convert(
    spec: &BeamSpec,
    target: ConvertTarget,
    basis: Basis,
) -> Result<String, CliError> {
    let beam = spec.resolve()?;
    let out = match target {
        ConvertTarget::Stokes => json!({ "stokes": beam.stokes().to_array() }),
        ConvertTarget::Coherency => {
            let c = match beam {
                Beam::Pure(w) => CoherencyMatrix::pure(w.amplitude() * w.amplitude(), &w.spinor()),
                Beam::Mixed(s) => coherency_from_stokes(&s)?,
            }
            .in_basis(basis);
            let m = c.matrix().0.map(|row| row.map(|z| [z.re, z.im]));
            json!({ "coherency": m, "basis": basis_name(basis) })
        }
        ConvertTarget::Angles => {
            let w = pure(beam)?;
            let a = angles_from_spinor(&w.spinor());
            json!({ "angles": { "theta": a.theta, "phi": a.phi, "chi": a.chi, "amp": w.amplitude() } })
        }
        ConvertTarget::Jones => {
            let j = jones_from_wave(&pure(beam)?).amp_phase();
            json!({ "jones": { "a1": j.a1, "a2": j.a2, "phi1": j.phi1, "phi2": j.phi2 } })
        }
        ConvertTarget::Spinor => {
            let w = pure(beam)?;
            let s = w.spinor().to_array().map(|z| [z.re, z.im]);
            json!({ "spinor": s, "amp": w.amplitude() })
        }
    };
    Ok(line(out))
}

/// One row of `polspin trace`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub step_index: usize,
    pub element_name: String,
    /// Unit sphere point for pure beams, `s⃗ / s0` for mixed ones.
    pub r: Vec3,
    pub m_re: Option<Vec3>,
    pub stokes: StokesVector,
    /// `arg⟨o_0, o_k⟩` against the input beam.
    pub pancharatnam_accum: Option<f64>,
}

impl TraceRecord {
    pub fn to_csv(&self) -> String {
        let mut fields = vec![self.step_index.to_string(), self.element_name.clone()];
        fields.extend(self.r.iter().map(|x| fmt_f64(*x)));
        match self.m_re {
            Some(m) => fields.extend(m.iter().map(|x| fmt_f64(*x))),
            None => fields.extend(std::iter::repeat_n(String::new(), 3)),
        }
        fields.extend(self.stokes.to_array().iter().map(|x| fmt_f64(*x)));
        fields.push(self.pancharatnam_accum.map(fmt_f64).unwrap_or_default());
        csv_row(fields)
    }
}

/// Sphere trajectory of one beam through the train, including the input row.
pub fn trace_beam(
    beam: Beam,
    elements: &[FilterElement],
    basis: Basis,
    tolerance: f64,
) -> Result<Vec<TraceRecord>, CliError> {
    let names = std::iter::once("input").chain(elements.iter().map(FilterElement::keyword));
    let mut records = Vec::with_capacity(elements.len() + 1);
    match beam {
        Beam::Pure(mut w) => {
            let o0 = w.spinor();
            let mut push = |step: usize, name: &str, w: &WaveState| {
                let frame = poincare_frame(&w.spinor());
                records.push(TraceRecord {
                    step_index: step,
                    element_name: name.to_owned(),
                    r: frame.r,
                    m_re: Some(frame.m_re),
                    stokes: stokes_from_wave(w),
                    pancharatnam_accum: pancharatnam_phase_with_tolerance(
                        &o0,
                        &w.spinor(),
                        tolerance,
                    )
                    .ok(),
                });
            };
            for (step, name) in names.enumerate() {
                if step > 0 {
                    w = matrix_in(&elements[step - 1], basis).act_on(&w)?;
                }
                push(step, name, &w);
            }
        }
        Beam::Mixed(s) => {
            let mut c = coherency_from_stokes(&s)?.in_basis(basis);
            for (step, name) in names.enumerate() {
                if step > 0 {
                    c = apply_filter_to_coherency(&elements[step - 1], &c);
                }
                let s = stokes_from_coherency(&c);
                if !(s.s0 >= f64::MIN_POSITIVE) {
                    return Err(PolError::Extinction.into());
                }
                records.push(TraceRecord {
                    step_index: step,
                    element_name: name.to_owned(),
                    r: s.vector().map(|x| x / s.s0),
                    m_re: None,
                    stokes: s,
                    pancharatnam_accum: None,
                });
            }
        }
    }
    Ok(records)
}

/// `polspin trace`: CSV of the sphere trajectory.
///
/// `beam` overrides the beams declared in the file. With several beams each
/// gets its own `# beam <i>` block with a header.
pub fn cmd_trace(
    doc: &TrainDocument,
    beam: Option<&BeamSpec>,
    basis: Basis,
    tolerance: f64,
) -> Result<String, CliError> {
    let specs: Vec<BeamSpec> = match beam {
        Some(b) => vec![*b],
        None => doc.beams.clone(),
    };
    if specs.is_empty() {
        return Err(CliError::input(
            "no beam: pass --beam or declare one in the train file",
        ));
    }
    let mut out = String::new();
    for (i, spec) in specs.iter().enumerate() {
        if specs.len() > 1 {
            out.push_str(&format!("# beam {}\n", i + 1));
        }
        out.push_str(TRACE_HEADER);
        out.push('\n');
        for record in trace_beam(spec.resolve()?, &doc.elements, basis, tolerance)? {
            out.push_str(&record.to_csv());
        }
    }
    Ok(out)
}

/// `polspin mueller`: the train's 4×4 Mueller matrix, one row per line.
pub fn cmd_mueller(doc: &TrainDocument, basis: Basis) -> Result<String, CliError> {
    let m = mueller_of_train(&doc.elements, basis)?;
    Ok(m.0
        .iter()
        .map(|row| csv_row(row.iter().map(|x| fmt_f64(*x))))
        .collect())
}

/// `polspin decompose`: eigen-structure of a Stokes-form beam.
pub fn cmd_decompose(spec: &BeamSpec) -> Result<String, CliError> {
    let BeamSpec::Stokes(s) = *spec else {
        return Err(CliError::input("decompose expects a beam in Stokes form"));
    };
    let s = StokesVector::from_array(s);
    let c = coherency_from_stokes(&s)?;
    let dop = degree_of_polarization(&s)?;
    let d = eig_decompose(&c);
    Ok(line(json!({
        "points": [d.point_plus, d.point_minus],
        "eigenvalues": [d.lambda_plus, d.lambda_minus],
        "dop": dop,
        "degenerate": d.degenerate,
    })))
}

/// `polspin phase`: Pancharatnam phase of `b` relative to `a`.
pub fn cmd_phase(a: &BeamSpec, b: &BeamSpec, tolerance: f64) -> Result<String, CliError> {
    let wa = pure(a.resolve()?)?;
    let wb = pure(b.resolve()?)?;
    let phase = pancharatnam_phase_with_tolerance(&wa.spinor(), &wb.spinor(), tolerance)?;
    Ok(line(
        json!({ "phase": phase, "in_phase": phase.abs() < IN_PHASE_TOL }),
    ))
}
