//! Spinor calculus for the polarization of monochromatic plane waves.
//!
//! A fully polarized wave is a positive amplitude plus a unit two-component
//! spinor. The spinor fixes a point on the Poincaré sphere together with a
//! tangent vector there, so it carries the polarization state *and* the phase
//! of the wave. Jones vectors are the same spinor written in the linear basis,
//! Stokes parameters are its Pauli expectation values, and partially
//! polarized beams are handled through the 2×2 coherency matrix.
//!
//! The crate is `no_std` and allocation free; everything is a pure function of
//! small `Copy` values.

#![no_std]
#![deny(missing_debug_implementations)]
// `!(x <= tol)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(test)]
extern crate std;

pub mod coherency;
mod error;
pub mod filters;
pub mod linalg;
pub mod spinor;

pub use crate::coherency::{
    apply_filter_to_coherency, coherency_from_stokes, degree_of_polarization, eig_decompose,
    mueller_of_train, purity_invariant, stokes_from_coherency, CoherencyMatrix, MuellerMatrix,
    PolarizationDecomposition,
};
pub use crate::error::PolError;
pub use crate::filters::{
    apply, classify, compose, matrix_circular, matrix_linear, Basis, ElementMatrix, FilterElement,
    MatrixAction,
};
pub use crate::linalg::{Mat2, Mat3, Vec3};
pub use crate::spinor::{
    angles_from_spinor, basis_permutation_check, ellipse_from_wave, field_sample, jones_from_wave,
    mate, pancharatnam_phase, poincare_frame, spinor_from_angles, stokes_from_wave, su2_to_so3,
    wave_from_jones, AngleSet, EllipseParams, JonesAmpPhase, JonesVector, PoincareFrame, Spinor2,
    StokesVector, WaveState,
};

pub use num_complex::Complex64;

/// Tolerance used for derived-quantity checks (norms, orthogonality).
pub const DERIVED_TOL: f64 = 1e-12;

/// Tolerance used for matrix-property preconditions (unitarity, det = 1).
pub const MATRIX_TOL: f64 = 1e-10;
