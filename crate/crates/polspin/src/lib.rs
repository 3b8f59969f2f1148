//! Train files, beam JSON and the `polspin` command-line tool built on
//! [`polspin_core`].

// `!(x >= min)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beam;
pub mod cli;
pub mod dsl;
pub mod format;

pub use crate::beam::{Beam, BeamSpec};
pub use crate::cli::{CliError, ConvertTarget};
pub use crate::dsl::{parse_train, serialize_train, ParseDiagnostic, Severity, TrainDocument};
