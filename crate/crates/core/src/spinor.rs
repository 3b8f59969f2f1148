//! Fully polarized plane waves and the conversions between their
//! representations.
//!
//! A wave is `A · o` with `o = e^{-iχ/2} (e^{-iφ/2} cos θ/2, e^{iφ/2} sin θ/2)`.
//! `(θ, φ)` are spherical coordinates of the Poincaré-sphere point and `χ/2`
//! is the phase of the wave. The components of `o` are amplitudes in the
//! circular basis; `U o` gives the linear (Jones) components.

use core::f64::consts::{FRAC_PI_4, PI, SQRT_2, TAU};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods whenever std is linked
use num_traits::Float;

use crate::error::PolError;
use crate::linalg::{self, Mat2, Mat3, Vec3, BASIS_CHANGE, BASIS_CHANGE_INV, EPSILON, PAULI};
use crate::{DERIVED_TOL, MATRIX_TOL};

/// Two-component complex spinor `(c1, c2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2 {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Spinor2 {
    pub const fn new(c1: Complex64, c2: Complex64) -> Self {
        Spinor2 { c1, c2 }
    }

    pub fn from_array(v: [Complex64; 2]) -> Self {
        Spinor2 { c1: v[0], c2: v[1] }
    }

    pub fn to_array(self) -> [Complex64; 2] {
        [self.c1, self.c2]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.c1.norm().hypot(self.c2.norm())
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Returns `None` for the zero spinor.
    pub fn normalized(&self) -> Option<Spinor2> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        Some(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, s: Complex64) -> Spinor2 {
        Spinor2::new(self.c1 * s, self.c2 * s)
    }

    /// Hermitian inner product `self† · other`.
    pub fn inner(&self, other: &Spinor2) -> Complex64 {
        self.c1.conj() * other.c1 + self.c2.conj() * other.c2
    }

    /// `self† M self`.
    pub fn expectation(&self, m: &Mat2) -> Complex64 {
        let v = m.mul_vec(self.to_array());
        self.c1.conj() * v[0] + self.c2.conj() * v[1]
    }

    pub fn transformed(&self, m: &Mat2) -> Spinor2 {
        Spinor2::from_array(m.mul_vec(self.to_array()))
    }

    /// Largest componentwise distance to `other`.
    pub fn max_abs_diff(&self, other: &Spinor2) -> f64 {
        (self.c1 - other.c1).norm().max((self.c2 - other.c2).norm())
    }
}

/// Polar angle θ ∈ [0, π], azimuth φ ∈ [0, 2π), phase χ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSet {
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
}

impl AngleSet {
    pub fn new(theta: f64, phi: f64, chi: f64) -> Result<Self, PolError> {
        let angles = AngleSet { theta, phi, chi };
        angles.validate()?;
        Ok(angles)
    }

    pub fn validate(&self) -> Result<(), PolError> {
        check_finite("theta", self.theta)?;
        check_finite("phi", self.phi)?;
        check_finite("chi", self.chi)?;
        if !(0.0..=PI).contains(&self.theta) {
            return Err(PolError::AngleOutOfRange {
                name: "theta",
                value: self.theta,
            });
        }
        if !(0.0..TAU).contains(&self.phi) {
            return Err(PolError::AngleOutOfRange {
                name: "phi",
                value: self.phi,
            });
        }
        if !(0.0..TAU).contains(&self.chi) {
            return Err(PolError::AngleOutOfRange {
                name: "chi",
                value: self.chi,
            });
        }
        Ok(())
    }
}

/// Amplitude plus unit spinor: the complete description of one wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveState {
    amplitude: f64,
    spinor: Spinor2,
}

impl WaveState {
    pub fn new(amplitude: f64, spinor: Spinor2) -> Result<Self, PolError> {
        if !(amplitude > 0.0 && amplitude.is_finite()) {
            return Err(PolError::NonPositiveAmplitude(amplitude));
        }
        if !spinor.is_unit(DERIVED_TOL) {
            return Err(PolError::NotUnitNorm(spinor.norm_sqr()));
        }
        Ok(WaveState { amplitude, spinor })
    }

    pub fn from_angles(amplitude: f64, angles: &AngleSet) -> Result<Self, PolError> {
        angles.validate()?;
        WaveState::new(amplitude, spinor_from_angles(angles))
    }

    /// Builds the wave with `χ = 0` whose Stokes vector is `s`.
    ///
    /// Fails with [`PolError::MixedState`] when `S = s0² − |s⃗|²` exceeds
    /// `tol · s0²`.
    pub fn from_stokes(s: &StokesVector, tol: f64) -> Result<Self, PolError> {
        s.validate(tol)?;
        if s.s0 <= 0.0 {
            return Err(PolError::ZeroFlux);
        }
        if !s.is_pure(tol) {
            return Err(PolError::MixedState);
        }
        let [x, y, z] = linalg::scale3(s.vector(), 1.0 / s.polarized_flux());
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = if x == 0.0 && y == 0.0 {
            0.0
        } else {
            y.atan2(x)
        };
        let angles = AngleSet {
            theta,
            phi: wrap_tau(phi),
            chi: 0.0,
        };
        WaveState::new(s.s0.sqrt(), spinor_from_angles(&angles))
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn spinor(&self) -> Spinor2 {
        self.spinor
    }
}

/// Semiaxes and orientation of the field ellipse.
///
/// `a ≥ 0` is the major semiaxis, `|b|` the minor one; `b > 0` means
/// right-hand polarization. `orientation` is the angle of the major axis
/// with the x-axis (`φ/2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParams {
    pub a: f64,
    pub b: f64,
    pub orientation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl StokesVector {
    pub const fn new(s0: f64, s1: f64, s2: f64, s3: f64) -> Self {
        StokesVector { s0, s1, s2, s3 }
    }

    pub fn from_array(s: [f64; 4]) -> Self {
        StokesVector::new(s[0], s[1], s[2], s[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.s0, self.s1, self.s2, self.s3]
    }

    /// `(s1, s2, s3)`.
    pub fn vector(&self) -> Vec3 {
        [self.s1, self.s2, self.s3]
    }

    /// `|s⃗| = sqrt(s1² + s2² + s3²)`.
    pub fn polarized_flux(&self) -> f64 {
        linalg::norm(self.vector())
    }

    /// `S = s0² − s1² − s2² − s3²`; zero for a completely polarized beam.
    pub fn purity_invariant(&self) -> f64 {
        self.s0 * self.s0 - self.s1 * self.s1 - self.s2 * self.s2 - self.s3 * self.s3
    }

    /// Checks `s0 ≥ 0` and `s0² ≥ |s⃗|²` up to `tol · s0²`.
    pub fn validate(&self, tol: f64) -> Result<(), PolError> {
        check_finite("s0", self.s0)?;
        check_finite("s1", self.s1)?;
        check_finite("s2", self.s2)?;
        check_finite("s3", self.s3)?;
        if self.s0 < 0.0 {
            return Err(PolError::InvalidStokes("s0 is negative"));
        }
        if self.purity_invariant() < -tol * self.s0 * self.s0 {
            return Err(PolError::InvalidStokes("polarized flux exceeds total flux"));
        }
        Ok(())
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.purity_invariant().abs() <= tol * self.s0 * self.s0
    }

    pub fn scaled(&self, k: f64) -> StokesVector {
        StokesVector::new(self.s0 * k, self.s1 * k, self.s2 * k, self.s3 * k)
    }

    pub fn max_abs_diff(&self, other: &StokesVector) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Sphere point `r` with the tangent pair `(Re M, Im M)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareFrame {
    pub r: Vec3,
    pub m_re: Vec3,
    pub m_im: Vec3,
}

/// Real amplitudes and phases of the two Cartesian field components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesAmpPhase {
    pub a1: f64,
    pub a2: f64,
    pub phi1: f64,
    pub phi2: f64,
}

/// Jones vector written as `prefactor · e^{i(kz−ωt)} · components`.
///
/// `components` is the unit spinor `U o` in the linear basis and
/// `prefactor = √2 e^{−iπ/4} A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector {
    pub components: Spinor2,
    pub prefactor: Complex64,
}

impl JonesVector {
    /// Complex field components `(E^c_x, E^c_y)` at `(t, z)`.
    pub fn field(&self, omega: f64, k: f64, t: f64, z: f64) -> [Complex64; 2] {
        let carrier = Complex64::from_polar(1.0, k * z - omega * t) * self.prefactor;
        [self.components.c1 * carrier, self.components.c2 * carrier]
    }

    /// Amplitudes and phases of the field at `t = z = 0`.
    pub fn amp_phase(&self) -> JonesAmpPhase {
        let [ex, ey] = self.field(0.0, 0.0, 0.0, 0.0);
        JonesAmpPhase {
            a1: ex.norm(),
            a2: ey.norm(),
            phi1: ex.arg(),
            phi2: ey.arg(),
        }
    }
}

/// Evaluates the spinor of a wave with the given angles.
pub fn spinor_from_angles(angles: &AngleSet) -> Spinor2 {
    let (s, c) = (0.5 * angles.theta).sin_cos();
    let half_phi = 0.5 * angles.phi;
    let half_chi = 0.5 * angles.chi;
    Spinor2::new(
        Complex64::from_polar(c, -half_chi - half_phi),
        Complex64::from_polar(s, -half_chi + half_phi),
    )
}

/// Inverse of [`spinor_from_angles`], exact up to the global sign of the spinor.
///
/// χ is returned in `[0, 2π)`, so `−o` and `o` give the same angles. At the
/// poles φ is set to zero.
pub fn angles_from_spinor(s: &Spinor2) -> AngleSet {
    let (m1, m2) = (s.c1.norm(), s.c2.norm());
    let theta = (2.0 * m2.atan2(m1)).clamp(0.0, PI);
    if m2 == 0.0 {
        return AngleSet {
            theta: 0.0,
            phi: 0.0,
            chi: wrap_tau(-2.0 * s.c1.arg()),
        };
    }
    if m1 == 0.0 {
        return AngleSet {
            theta: PI,
            phi: 0.0,
            chi: wrap_tau(-2.0 * s.c2.arg()),
        };
    }
    // arg c1 = −(χ+φ)/2, arg c2 = (φ−χ)/2; the larger component fixes χ best
    let phi = wrap_tau(s.c2.arg() - s.c1.arg());
    let chi = if m1 >= m2 {
        wrap_tau(-2.0 * s.c1.arg() - phi)
    } else {
        wrap_tau(phi - 2.0 * s.c2.arg())
    };
    AngleSet { theta, phi, chi }
}

/// Semiaxes of the field ellipse; `cos θ/2 = |c1|`, `sin θ/2 = |c2|`.
pub fn ellipse_from_wave(w: &WaveState) -> EllipseParams {
    let s = w.spinor();
    let (c, sn) = (s.c1.norm(), s.c2.norm());
    let angles = angles_from_spinor(&s);
    EllipseParams {
        a: w.amplitude() * (c + sn),
        b: w.amplitude() * (c - sn),
        orientation: 0.5 * angles.phi,
    }
}

/// `R_i = o†σ_i o` and `M_i = oᵗ ε σ_i o`.
pub fn poincare_frame(s: &Spinor2) -> PoincareFrame {
    let mut r = [0.0; 3];
    let mut m_re = [0.0; 3];
    let mut m_im = [0.0; 3];
    let row = EPSILON.transpose().mul_vec(s.to_array());
    for (i, sigma) in PAULI.iter().enumerate() {
        r[i] = s.expectation(sigma).re;
        // oᵗ ε σ o = (εᵗ o)ᵗ σ o
        let v = sigma.mul_vec(s.to_array());
        let m = row[0] * v[0] + row[1] * v[1];
        m_re[i] = m.re;
        m_im[i] = m.im;
    }
    PoincareFrame { r, m_re, m_im }
}

/// `s0 = A²`, `s_i = s0 · o†σ_i o`.
pub fn stokes_from_wave(w: &WaveState) -> StokesVector {
    let s0 = w.amplitude() * w.amplitude();
    let r = poincare_frame(&w.spinor()).r;
    StokesVector::new(s0, s0 * r[0], s0 * r[1], s0 * r[2])
}

/// Linear-basis (Jones) form of the wave.
pub fn jones_from_wave(w: &WaveState) -> JonesVector {
    JonesVector {
        components: w.spinor().transformed(&BASIS_CHANGE),
        prefactor: Complex64::from_polar(SQRT_2 * w.amplitude(), -FRAC_PI_4),
    }
}

/// Builds the wave whose Jones field at `t = z = 0` is
/// `(a1 e^{iφ1}, a2 e^{iφ2})`.
///
/// The `√2 e^{−iπ/4}` prefactor is divided out before returning to the
/// circular basis, so `jones_from_wave(wave_from_jones(j)).amp_phase()`
/// reproduces `j` exactly.
pub fn wave_from_jones(j: &JonesAmpPhase) -> Result<WaveState, PolError> {
    check_finite("a1", j.a1)?;
    check_finite("a2", j.a2)?;
    check_finite("phi1", j.phi1)?;
    check_finite("phi2", j.phi2)?;
    if j.a1 < 0.0 || j.a2 < 0.0 {
        return Err(PolError::NonPositiveAmplitude(j.a1.min(j.a2)));
    }
    let field = Spinor2::new(
        Complex64::from_polar(j.a1, j.phi1),
        Complex64::from_polar(j.a2, j.phi2),
    );
    let unit = field.normalized().ok_or(PolError::ZeroField)?;
    let linear = unit.scaled(Complex64::from_polar(1.0, FRAC_PI_4));
    let spinor = linear.transformed(&BASIS_CHANGE_INV);
    WaveState::new(field.norm() / SQRT_2, spinor)
}

/// Checks `U σ1 U⁻¹ = σ3`, `U σ2 U⁻¹ = σ1`, `U σ3 U⁻¹ = σ2` to 1e-15.
pub fn basis_permutation_check() -> [bool; 3] {
    let [s1, s2, s3] = PAULI;
    let pairs = [(s1, s3), (s2, s1), (s3, s2)];
    pairs.map(|(from, to)| BASIS_CHANGE.conjugate(&from).max_abs_diff(&to) <= 1e-15)
}

/// Real field components at `(t, z)`:
/// `E_x + iE_y = A (e^{i(ωt−kz)} conj(c1) + e^{−i(ωt−kz)} c2)`.
pub fn field_sample(w: &WaveState, omega: f64, k: f64, t: f64, z: f64) -> (f64, f64) {
    let phase = Complex64::from_polar(1.0, omega * t - k * z);
    let s = w.spinor();
    let e = (phase * s.c1.conj() + phase.conj() * s.c2) * w.amplitude();
    (e.re, e.im)
}

/// SO(3) image `a` of `q ∈ SU(2)`, defined by `q†σ_i q = Σ_j a_ij σ_j`.
///
/// For any unit spinor `o`, `R(q o) = a · R(o)`.
pub fn su2_to_so3(q: &Mat2) -> Result<Mat3, PolError> {
    let defect = q.unitarity_defect();
    if !(defect <= MATRIX_TOL) {
        return Err(PolError::NonUnitary(defect));
    }
    let det_err = (q.det() - Complex64::new(1.0, 0.0)).norm();
    if det_err > MATRIX_TOL {
        return Err(PolError::NonUnimodular(det_err));
    }
    Ok(so3_unchecked(q))
}

pub(crate) fn so3_unchecked(q: &Mat2) -> Mat3 {
    let qh = q.adjoint();
    let mut a = [[0.0; 3]; 3];
    for (i, si) in PAULI.iter().enumerate() {
        let conj = qh * *si * *q;
        for (j, sj) in PAULI.iter().enumerate() {
            a[i][j] = 0.5 * (conj * *sj).trace().re;
        }
    }
    a
}

/// Pancharatnam phase `arg(s1† s2)` in `(−π, π]`; zero means in phase.
pub fn pancharatnam_phase(s1: &Spinor2, s2: &Spinor2) -> Result<f64, PolError> {
    pancharatnam_phase_with_tolerance(s1, s2, DERIVED_TOL)
}

pub fn pancharatnam_phase_with_tolerance(
    s1: &Spinor2,
    s2: &Spinor2,
    tol: f64,
) -> Result<f64, PolError> {
    let overlap = s1.inner(s2);
    if overlap.norm() < tol {
        return Err(PolError::OrthogonalStates);
    }
    let arg = overlap.arg();
    Ok(if arg <= -PI { PI } else { arg })
}

/// The orthogonal partner `(−conj(c2), conj(c1))`; its sphere point is antipodal.
pub fn mate(s: &Spinor2) -> Spinor2 {
    Spinor2::new(-s.c2.conj(), s.c1.conj())
}

fn wrap_tau(x: f64) -> f64 {
    let mut w = x % TAU;
    if w < 0.0 {
        w += TAU;
    }
    if w >= TAU {
        0.0
    } else {
        w
    }
}

fn check_finite(name: &'static str, v: f64) -> Result<(), PolError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(PolError::NonFinite(name))
    }
}
