//! Optical elements as 2×2 matrices acting on spinors.
//!
//! Every element is stored as an overall complex `scale` times a unimodular
//! matrix `m`. Unitary `m` is a rotation of the Poincaré sphere; the
//! attenuator's Hermitian `m` is a boost, i.e. a conformal map of the sphere.
//!
//! Trains are applied in propagation order: the first element acts first, so
//! it is the rightmost factor of the composed matrix.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::error::PolError;
use crate::linalg::{self, Mat2, Vec3, BASIS_CHANGE, BASIS_CHANGE_INV};
use crate::spinor::{Spinor2, WaveState};

/// Which pair of basis states the matrix components refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Basis {
    /// Circularly polarized basis states `|+⟩`, `|−⟩`.
    #[default]
    Circular,
    /// Linearly polarized basis states `|x⟩`, `|y⟩` (Jones components).
    Linear,
}

impl Basis {
    /// Re-expresses a circular-basis operator in this basis.
    pub fn from_circular(self, m: &Mat2) -> Mat2 {
        match self {
            Basis::Circular => *m,
            Basis::Linear => BASIS_CHANGE * *m * BASIS_CHANGE_INV,
        }
    }

    /// Re-expresses an operator written in this basis in the circular basis.
    pub fn to_circular(self, m: &Mat2) -> Mat2 {
        match self {
            Basis::Circular => *m,
            Basis::Linear => BASIS_CHANGE_INV * *m * BASIS_CHANGE,
        }
    }

    /// Components of a circular-basis spinor in this basis.
    pub fn spinor_from_circular(self, s: &Spinor2) -> Spinor2 {
        match self {
            Basis::Circular => *s,
            Basis::Linear => s.transformed(&BASIS_CHANGE),
        }
    }

    pub fn spinor_to_circular(self, s: &Spinor2) -> Spinor2 {
        match self {
            Basis::Circular => *s,
            Basis::Linear => s.transformed(&BASIS_CHANGE_INV),
        }
    }
}

/// One element of an optical train. All angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterElement {
    /// Phase delays `delta1` on x and `delta2` on y.
    PhaseShifter {
        delta1: f64,
        delta2: f64,
    },
    /// Rotation of the transverse coordinate axes by `alpha`.
    Rotator {
        alpha: f64,
    },
    /// Phase delays `delta1`, `delta2` on the two circular components.
    Gyrotropic {
        delta1: f64,
        delta2: f64,
    },
    /// Quarter-wave plate with its axis at `axis_angle` to the x-axis.
    QuarterWave {
        axis_angle: f64,
    },
    HalfWave {
        axis_angle: f64,
    },
    /// Amplitude factors `e^{-eta1}` on x and `e^{-eta2}` on y.
    Attenuator {
        eta1: f64,
        eta2: f64,
    },
}

impl FilterElement {
    /// Checks that parameters are finite and attenuation exponents are nonnegative.
    pub fn validate(&self) -> Result<(), PolError> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(PolError::NonFinite(name))
            }
        };
        match *self {
            FilterElement::PhaseShifter { delta1, delta2 }
            | FilterElement::Gyrotropic { delta1, delta2 } => {
                finite("delta1", delta1)?;
                finite("delta2", delta2)
            }
            FilterElement::Rotator { alpha } => finite("alpha", alpha),
            FilterElement::QuarterWave { axis_angle } | FilterElement::HalfWave { axis_angle } => {
                finite("axis_angle", axis_angle)
            }
            FilterElement::Attenuator { eta1, eta2 } => {
                finite("eta1", eta1)?;
                finite("eta2", eta2)?;
                if eta1 < 0.0 {
                    return Err(PolError::NegativeAttenuation {
                        name: "eta1",
                        value: eta1,
                    });
                }
                if eta2 < 0.0 {
                    return Err(PolError::NegativeAttenuation {
                        name: "eta2",
                        value: eta2,
                    });
                }
                Ok(())
            }
        }
    }

    /// Lossless elements are represented by SU(2) matrices (times a phase).
    pub fn is_unitary(&self) -> bool {
        !matches!(self, FilterElement::Attenuator { .. })
    }

    /// Short lowercase name, matching the train file keyword.
    pub fn keyword(&self) -> &'static str {
        match self {
            FilterElement::PhaseShifter { .. } => "shifter",
            FilterElement::Rotator { .. } => "rotate",
            FilterElement::Gyrotropic { .. } => "gyro",
            FilterElement::QuarterWave { .. } => "qwp",
            FilterElement::HalfWave { .. } => "hwp",
            FilterElement::Attenuator { .. } => "atten",
        }
    }
}

/// `scale · m` in a given basis, with `det m = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementMatrix {
    pub m: Mat2,
    pub scale: Complex64,
    pub basis: Basis,
}

impl ElementMatrix {
    pub fn identity(basis: Basis) -> Self {
        ElementMatrix {
            m: Mat2::IDENTITY,
            scale: Complex64::new(1.0, 0.0),
            basis,
        }
    }

    /// The full matrix `scale · m`.
    pub fn full(&self) -> Mat2 {
        self.m.scaled(self.scale)
    }

    /// Same operator written in another basis.
    pub fn in_basis(&self, basis: Basis) -> ElementMatrix {
        let circular = self.basis.to_circular(&self.m);
        ElementMatrix {
            m: basis.from_circular(&circular),
            scale: self.scale,
            basis,
        }
    }

    /// `self · other`: `other` acts first. Both must share a basis.
    pub fn then_after(&self, other: &ElementMatrix) -> ElementMatrix {
        let other = other.in_basis(self.basis);
        ElementMatrix {
            m: self.m * other.m,
            scale: self.scale * other.scale,
            basis: self.basis,
        }
    }

    /// Applies the operator to a wave.
    ///
    /// The spinor is carried into this matrix's basis, transformed and carried
    /// back; the new amplitude is `A·‖v‖` and the new spinor `v/‖v‖`, which
    /// keeps the global phase picked up from `scale`.
    pub fn act_on(&self, w: &WaveState) -> Result<WaveState, PolError> {
        let local = self.basis.spinor_from_circular(&w.spinor());
        let v = self
            .basis
            .spinor_to_circular(&local.transformed(&self.full()));
        let n = v.norm();
        if !(n >= 1e-300) || !(w.amplitude() * n > 0.0) {
            return Err(PolError::Extinction);
        }
        let spinor = v.scaled(Complex64::new(1.0 / n, 0.0));
        WaveState::new(w.amplitude() * n, spinor)
    }
}

/// Geometric meaning of an element's unimodular matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixAction {
    /// Rotation by `angle` (right-hand rule) about `axis`.
    PoincareRotation { axis: Vec3, angle: f64 },
    /// Boost of Stokes space toward `boost_axis` with the given rapidity.
    ConformalMap { boost_axis: Vec3, rapidity: f64 },
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `exp(i·(angle)·σ_k)` for the Pauli matrix with index `k` (0-based).
fn exp_i_pauli(k: usize, angle: f64) -> Mat2 {
    let (s, cs) = angle.sin_cos();
    let mut y = [c(0.0, 0.0); 3];
    y[k] = c(0.0, s);
    Mat2::from_pauli(c(cs, 0.0), y)
}

fn quarter_wave_circular(axis_angle: f64) -> Mat2 {
    let (s, cs) = (2.0 * axis_angle).sin_cos();
    Mat2::from_pauli(
        c(FRAC_1_SQRT_2, 0.0),
        [
            c(0.0, -FRAC_1_SQRT_2 * cs),
            c(0.0, -FRAC_1_SQRT_2 * s),
            c(0.0, 0.0),
        ],
    )
}

/// Circular-basis matrix of an element.
pub fn matrix_circular(e: &FilterElement) -> ElementMatrix {
    let one = c(1.0, 0.0);
    let (m, scale) = match *e {
        FilterElement::PhaseShifter { delta1, delta2 } => (
            exp_i_pauli(0, 0.5 * (delta2 - delta1)),
            Complex64::from_polar(1.0, -0.5 * (delta1 + delta2)),
        ),
        FilterElement::Rotator { alpha } => (exp_i_pauli(2, alpha), one),
        FilterElement::Gyrotropic { delta1, delta2 } => (
            exp_i_pauli(2, 0.5 * (delta2 - delta1)),
            Complex64::from_polar(1.0, -0.5 * (delta1 + delta2)),
        ),
        FilterElement::QuarterWave { axis_angle } => (quarter_wave_circular(axis_angle), one),
        FilterElement::HalfWave { axis_angle } => {
            // QWP² = −i (cos 2a σ1 + sin 2a σ2)
            let (s, cs) = (2.0 * axis_angle).sin_cos();
            (
                Mat2::from_pauli(c(0.0, 0.0), [c(0.0, -cs), c(0.0, -s), c(0.0, 0.0)]),
                one,
            )
        }
        FilterElement::Attenuator { eta1, eta2 } => {
            let half = 0.5 * (eta2 - eta1);
            (
                Mat2::from_pauli(
                    c(half.cosh(), 0.0),
                    [c(half.sinh(), 0.0), c(0.0, 0.0), c(0.0, 0.0)],
                ),
                c((-0.5 * (eta1 + eta2)).exp(), 0.0),
            )
        }
    };
    ElementMatrix {
        m,
        scale,
        basis: Basis::Circular,
    }
}

/// Linear-basis (Jones) matrix: `U · m · U⁻¹` with the same scale.
pub fn matrix_linear(e: &FilterElement) -> ElementMatrix {
    matrix_circular(e).in_basis(Basis::Linear)
}

pub fn matrix_in(e: &FilterElement, basis: Basis) -> ElementMatrix {
    matrix_circular(e).in_basis(basis)
}

/// Passes a wave through one element.
pub fn apply(e: &FilterElement, w: &WaveState) -> Result<WaveState, PolError> {
    matrix_circular(e).act_on(w)
}

/// Rotation (lossless elements) or boost (attenuator) described by `e`.
///
/// The axis is reported with its first nonzero component positive and the
/// sign carried by the angle or rapidity; rotation angles lie in `(−π, π]`.
/// The identity reports axis Z with angle 0.
pub fn classify(e: &FilterElement) -> MatrixAction {
    action_of(&matrix_circular(e).m)
}

/// Classifies a circular-basis unimodular matrix that is either unitary or
/// Hermitian.
pub fn action_of(m: &Mat2) -> MatrixAction {
    let (x, y) = m.pauli_coefficients();
    if m.is_unitary(crate::MATRIX_TOL) {
        // m = cos(β/2) I − i sin(β/2) n·σ is a rotation by β about n
        let q = [-y[0].im, -y[1].im, -y[2].im];
        let sin_half = linalg::norm(q);
        let mut angle = 2.0 * sin_half.atan2(x.re);
        if sin_half == 0.0 {
            return MatrixAction::PoincareRotation {
                axis: [0.0, 0.0, 1.0],
                angle: 0.0,
            };
        }
        let mut axis = linalg::scale3(q, 1.0 / sin_half);
        if angle > PI {
            angle -= 2.0 * PI;
        }
        (axis, angle) = linalg::canonical_axis(axis, angle);
        if angle <= -PI {
            angle = PI;
        }
        MatrixAction::PoincareRotation { axis, angle }
    } else {
        // m = cosh(η/2) I + sinh(η/2) n·σ
        let h = [y[0].re, y[1].re, y[2].re];
        let sinh_half = linalg::norm(h);
        let rapidity = 2.0 * sinh_half.asinh();
        let axis = linalg::scale3(h, 1.0 / sinh_half);
        let (boost_axis, rapidity) = linalg::canonical_axis(axis, rapidity);
        MatrixAction::ConformalMap {
            boost_axis,
            rapidity,
        }
    }
}

/// Product of the element matrices in propagation order, in `basis`.
pub fn compose(train: &[FilterElement], basis: Basis) -> Result<ElementMatrix, PolError> {
    if train.is_empty() {
        return Err(PolError::EmptyTrain);
    }
    Ok(train.iter().fold(ElementMatrix::identity(basis), |acc, e| {
        matrix_in(e, basis).then_after(&acc)
    }))
}
