//! Fixed-size complex 2×2 and real 3-vector helpers.
//!
//! Everything here is tiny and closed-form; there is no reason to pull in a
//! general linear algebra crate for 2×2 products.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex 2×2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);

    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Mat2([[a, ZERO], [ZERO, d]])
    }

    /// `x I + y·σ` with complex coefficients, the generic element of the algebra.
    pub fn from_pauli(x: Complex64, y: [Complex64; 3]) -> Self {
        Mat2([[x + y[2], y[0] - I * y[1]], [y[0] + I * y[1], x - y[2]]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn scaled_re(&self, s: f64) -> Self {
        self.scaled(Complex64::new(s, 0.0))
    }

    /// Inverse of a matrix with nonzero determinant.
    pub fn inverse(&self) -> Self {
        let m = &self.0;
        let d = self.det();
        Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Largest elementwise modulus of `Q^H Q - I`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::IDENTITY)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Conjugation `self · m · self^{-1}`.
    pub fn conjugate(&self, m: &Mat2) -> Mat2 {
        *self * *m * self.inverse()
    }

    /// Expansion coefficients `(x, y)` with `self = x I + y·σ`.
    pub fn pauli_coefficients(&self) -> (Complex64, [Complex64; 3]) {
        let m = &self.0;
        let half = 0.5;
        (
            (m[0][0] + m[1][1]) * half,
            [
                (m[0][1] + m[1][0]) * half,
                (m[1][0] - m[0][1]) * half * -I,
                (m[0][0] - m[1][1]) * half,
            ],
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] += rhs.0[r][c];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        self.scaled_re(-1.0)
    }
}

/// σ0 = I.
pub const SIGMA0: Mat2 = Mat2::IDENTITY;
pub const SIGMA1: Mat2 = Mat2::new(ZERO, ONE, ONE, ZERO);
pub const SIGMA2: Mat2 = Mat2::new(ZERO, Complex64::new(0.0, -1.0), I, ZERO);
pub const SIGMA3: Mat2 = Mat2::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0));

/// The three Pauli matrices in index order.
pub const PAULI: [Mat2; 3] = [SIGMA1, SIGMA2, SIGMA3];

/// σ0..σ3, the basis used to expand coherency matrices.
pub const SIGMA: [Mat2; 4] = [SIGMA0, SIGMA1, SIGMA2, SIGMA3];

/// The symplectic form `ε = [[0, 1], [-1, 0]]`.
pub const EPSILON: Mat2 = Mat2::new(ZERO, ONE, Complex64::new(-1.0, 0.0), ZERO);

/// Change of basis from circular to linear polarization components.
///
/// `U = ½ [[1+i, 1+i], [-1+i, 1-i]]`, an element of SU(2). It permutes the
/// Poincaré axes: `U σ1 U⁻¹ = σ3`, `U σ2 U⁻¹ = σ1`, `U σ3 U⁻¹ = σ2`.
pub const BASIS_CHANGE: Mat2 = Mat2::new(
    Complex64::new(0.5, 0.5),
    Complex64::new(0.5, 0.5),
    Complex64::new(-0.5, 0.5),
    Complex64::new(0.5, -0.5),
);

/// `U⁻¹ = U^H`, written out so that no rounding enters.
pub const BASIS_CHANGE_INV: Mat2 = Mat2::new(
    Complex64::new(0.5, -0.5),
    Complex64::new(-0.5, -0.5),
    Complex64::new(0.5, -0.5),
    Complex64::new(0.5, 0.5),
);

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale3(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn mat3_mul_vec(m: &Mat3, v: Vec3) -> Vec3 {
    [dot(m[0], v), dot(m[1], v), dot(m[2], v)]
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

pub fn mat3_transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            out[r][c] = a[c][r];
        }
    }
    out
}

pub fn mat3_det(a: &Mat3) -> f64 {
    dot(a[0], cross(a[1], a[2]))
}

pub fn mat3_max_abs_diff(a: &Mat3, b: &Mat3) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..3 {
        for c in 0..3 {
            worst = worst.max((a[r][c] - b[r][c]).abs());
        }
    }
    worst
}

/// Rotation by `angle` (right-hand rule) about the unit vector `axis`.
pub fn rotation_about(axis: Vec3, angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    let [x, y, z] = axis;
    [
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ]
}

/// Flip `(axis, value)` so the first non-negligible axis component is positive.
pub(crate) fn canonical_axis(axis: Vec3, value: f64) -> (Vec3, f64) {
    let lead = axis.iter().copied().find(|c| c.abs() > 1e-9).unwrap_or(1.0);
    if lead < 0.0 {
        (scale3(axis, -1.0), -value)
    } else {
        (axis, value)
    }
}
