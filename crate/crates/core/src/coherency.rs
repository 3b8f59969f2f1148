//! Partially polarized beams.
//!
//! A beam is described by the Hermitian coherency matrix `C = ½ Σ s_α σ_α`
//! with `s_α = tr(C σ_α)`. `det C = S/4`, so `C` is rank one exactly for
//! completely polarized light. Its two eigenspinors sit at antipodal points of
//! the Poincaré sphere; for unpolarized light (`C ∝ I`) they are undefined.

use num_complex::Complex64;

use crate::error::PolError;
use crate::filters::{compose, matrix_in, Basis, FilterElement};
use crate::linalg::{self, Mat2, Vec3, SIGMA};
use crate::spinor::{mate, poincare_frame, Spinor2, StokesVector};
use crate::DERIVED_TOL;

/// Relative tolerance for accepting Stokes and coherency inputs.
pub const INPUT_TOL: f64 = 1e-9;

/// Hermitian positive semidefinite 2×2 matrix in a given basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherencyMatrix {
    matrix: Mat2,
    basis: Basis,
}

impl CoherencyMatrix {
    /// Validates hermiticity (to 1e-12 of the trace) and positivity
    /// (eigenvalues ≥ −1e-9 · trace).
    pub fn new(matrix: Mat2, basis: Basis) -> Result<Self, PolError> {
        let trace = matrix.trace().re;
        let scale = trace.abs().max(f64::MIN_POSITIVE);
        if !(matrix.hermiticity_defect() <= DERIVED_TOL * scale) {
            return Err(PolError::NotHermitian);
        }
        let (x, y) = matrix.pauli_coefficients();
        let radius = linalg::norm([y[0].re, y[1].re, y[2].re]);
        if trace < 0.0 || x.re - radius < -INPUT_TOL * scale {
            return Err(PolError::NotPositiveSemidefinite);
        }
        Ok(CoherencyMatrix { matrix, basis })
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// The same beam expressed in another basis (`C̃ = U C U†` for linear).
    pub fn in_basis(&self, basis: Basis) -> CoherencyMatrix {
        let circular = self.basis.to_circular(&self.matrix);
        CoherencyMatrix {
            matrix: basis.from_circular(&circular),
            basis,
        }
    }

    /// `ρ = C / s0`, the matching density matrix.
    pub fn density(&self) -> Result<Mat2, PolError> {
        let s0 = self.matrix.trace().re;
        if s0 <= 0.0 {
            return Err(PolError::ZeroFlux);
        }
        Ok(self.matrix.scaled_re(1.0 / s0))
    }

    /// Pure-state coherency `s0 · o o†`.
    pub fn pure(s0: f64, o: &Spinor2) -> CoherencyMatrix {
        let v = o.to_array();
        let mut m = Mat2::ZERO;
        for r in 0..2 {
            for c in 0..2 {
                m.0[r][c] = v[r] * v[c].conj() * s0;
            }
        }
        CoherencyMatrix {
            matrix: m,
            basis: Basis::Circular,
        }
    }
}

/// Eigen-structure of a coherency matrix.
///
/// Eigenvalues are ordered descending. `point_minus = −point_plus` except when
/// `degenerate`, where both are set to `±(0, 0, 1)` by convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationDecomposition {
    pub point_plus: Vec3,
    pub point_minus: Vec3,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub degenerate: bool,
}

/// 4×4 real operator on `(s0, s1, s2, s3)`, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuellerMatrix(pub [[f64; 4]; 4]);

impl MuellerMatrix {
    pub const IDENTITY: MuellerMatrix = MuellerMatrix([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    pub fn apply(&self, s: &StokesVector) -> StokesVector {
        let v = s.to_array();
        let row = |r: &[f64; 4]| r.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
        StokesVector::new(
            row(&self.0[0]),
            row(&self.0[1]),
            row(&self.0[2]),
            row(&self.0[3]),
        )
    }

    pub fn max_abs_diff(&self, other: &MuellerMatrix) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).abs());
            }
        }
        worst
    }
}

/// `s_α = tr(M B σ_α B⁻¹)` for a matrix written in `basis`; no validation.
fn stokes_of_matrix(m: &Mat2, basis: Basis) -> StokesVector {
    let circular = basis.to_circular(m);
    let s = SIGMA.map(|sigma| (circular * sigma).trace().re);
    StokesVector::from_array(s)
}

/// `½ Σ s_α σ_α` in the circular basis; no validation.
fn matrix_of_stokes(s: &StokesVector) -> Mat2 {
    let half = |v: f64| Complex64::new(0.5 * v, 0.0);
    Mat2::from_pauli(half(s.s0), [half(s.s1), half(s.s2), half(s.s3)])
}

/// `C = ½ (s0 I + s1 σ1 + s2 σ2 + s3 σ3)` in the circular basis.
pub fn coherency_from_stokes(s: &StokesVector) -> Result<CoherencyMatrix, PolError> {
    s.validate(INPUT_TOL)?;
    Ok(CoherencyMatrix {
        matrix: matrix_of_stokes(s),
        basis: Basis::Circular,
    })
}

/// `s_α = tr(C σ_α)`, reading Pauli matrices in the basis of `c`.
pub fn stokes_from_coherency(c: &CoherencyMatrix) -> StokesVector {
    stokes_of_matrix(&c.matrix, c.basis)
}

/// `S = s0² − s1² − s2² − s3²`.
pub fn purity_invariant(s: &StokesVector) -> f64 {
    s.purity_invariant()
}

/// `|s⃗| / s0`, clamped into `[0, 1]`.
pub fn degree_of_polarization(s: &StokesVector) -> Result<f64, PolError> {
    if s.s0 == 0.0 {
        return Err(PolError::ZeroFlux);
    }
    Ok((s.polarized_flux() / s.s0).clamp(0.0, 1.0))
}

/// Unit eigenspinor of `n·σ` with eigenvalue +1.
fn spinor_along(n: Vec3) -> Spinor2 {
    let [x, y, z] = n;
    let v = if z >= 0.0 {
        Spinor2::new(Complex64::new(1.0 + z, 0.0), Complex64::new(x, y))
    } else {
        Spinor2::new(Complex64::new(x, -y), Complex64::new(1.0 - z, 0.0))
    };
    v.normalized().unwrap_or(Spinor2::new(
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ))
}

/// Closed-form eigen-decomposition, `λ± = (s0 ± |s⃗|)/2`.
pub fn eig_decompose(c: &CoherencyMatrix) -> PolarizationDecomposition {
    let s = stokes_from_coherency(c);
    let p = s.polarized_flux();
    let lambda_plus = 0.5 * (s.s0 + p);
    let lambda_minus = (0.5 * (s.s0 - p)).max(0.0);
    if !(p >= DERIVED_TOL * s.s0) || p == 0.0 {
        return PolarizationDecomposition {
            point_plus: [0.0, 0.0, 1.0],
            point_minus: [0.0, 0.0, -1.0],
            lambda_plus,
            lambda_minus,
            degenerate: true,
        };
    }
    let plus = spinor_along(linalg::scale3(s.vector(), 1.0 / p));
    PolarizationDecomposition {
        point_plus: poincare_frame(&plus).r,
        point_minus: poincare_frame(&mate(&plus)).r,
        lambda_plus,
        lambda_minus,
        degenerate: false,
    }
}

/// `C' = F C F†` with `F = scale · m` taken in the basis of `c`.
pub fn apply_filter_to_coherency(e: &FilterElement, c: &CoherencyMatrix) -> CoherencyMatrix {
    let f = matrix_in(e, c.basis).full();
    CoherencyMatrix {
        matrix: f * c.matrix * f.adjoint(),
        basis: c.basis,
    }
}

/// Stokes-space image of a train.
///
/// Column α is the Stokes vector of `F (½ σ_α) F†`, with `F` the composed
/// train (scale included) in `basis`. The result acts on physical Stokes
/// vectors whichever basis is used for the intermediate products.
pub fn mueller_of_train(train: &[FilterElement], basis: Basis) -> Result<MuellerMatrix, PolError> {
    let f = compose(train, basis)?.full();
    let fh = f.adjoint();
    let mut out = [[0.0; 4]; 4];
    for (alpha, sigma) in SIGMA.iter().enumerate() {
        let probe = basis.from_circular(&sigma.scaled_re(0.5));
        let column = stokes_of_matrix(&(f * probe * fh), basis).to_array();
        for (row, value) in column.iter().enumerate() {
            out[row][alpha] = *value;
        }
    }
    Ok(MuellerMatrix(out))
}
