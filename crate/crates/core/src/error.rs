use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum PolError {
    #[error("angle `{name}` = {value} is outside its allowed range")]
    AngleOutOfRange { name: &'static str, value: f64 },
    #[error("amplitude must be positive and finite, got {0}")]
    NonPositiveAmplitude(f64),
    #[error("spinor is not unit-norm (|c1|^2 + |c2|^2 = {0})")]
    NotUnitNorm(f64),
    #[error("matrix is not unitary (max |Q^H Q - I| = {0:e})")]
    NonUnitary(f64),
    #[error("matrix is not unimodular (|det - 1| = {0:e})")]
    NonUnimodular(f64),
    #[error("states are orthogonal; the Pancharatnam phase is undefined")]
    OrthogonalStates,
    #[error("both Jones amplitudes are zero")]
    ZeroField,
    #[error("the element extinguished the wave")]
    Extinction,
    #[error("optical train has no elements")]
    EmptyTrain,
    #[error("invalid Stokes vector: {0}")]
    InvalidStokes(&'static str),
    #[error("total flux s0 is zero")]
    ZeroFlux,
    #[error("coherency matrix is not Hermitian")]
    NotHermitian,
    #[error("coherency matrix is not positive semidefinite")]
    NotPositiveSemidefinite,
    #[error("attenuation exponent `{name}` = {value} is negative")]
    NegativeAttenuation { name: &'static str, value: f64 },
    #[error("parameter `{0}` is not a finite number")]
    NonFinite(&'static str),
    #[error("beam is partially polarized; no spinor describes it")]
    MixedState,
}
