//! Beam declarations and their JSON form.
//!
//! A beam is exactly one of
//!
//! ```json
//! {"angles": {"theta": 1.57, "phi": 0.0, "chi": 0.0, "amp": 1.0}}
//! {"stokes": [1.0, 0.6, 0.0, 0.0]}
//! {"jones": {"a1": 1.0, "a2": 0.0, "phi1": 0.0, "phi2": 0.0}}
//! ```
//!
//! Angles are radians. Stokes input may describe a partially polarized beam.

use polspin_core::coherency::INPUT_TOL;
use polspin_core::{wave_from_jones, AngleSet, JonesAmpPhase, PolError, StokesVector, WaveState};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnglesSpec {
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
    pub amp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JonesSpec {
    pub a1: f64,
    pub a2: f64,
    pub phi1: f64,
    pub phi2: f64,
}

/// A beam as written by the user, before validation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum BeamSpec {
    Angles(AnglesSpec),
    Stokes([f64; 4]),
    Jones(JonesSpec),
}

/// A validated beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beam {
    Pure(WaveState),
    Mixed(StokesVector),
}

impl Beam {
    pub fn stokes(&self) -> StokesVector {
        match self {
            Beam::Pure(w) => polspin_core::stokes_from_wave(w),
            Beam::Mixed(s) => *s,
        }
    }
}

impl BeamSpec {
    pub fn from_json(text: &str) -> Result<BeamSpec, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("beam specs always serialize")
    }

    /// Checks ranges and builds the beam.
    ///
    /// Stokes input with `S ≤ 1e-9 s0²` becomes a pure wave with χ = 0;
    /// anything more depolarized stays a Stokes vector.
    pub fn resolve(&self) -> Result<Beam, PolError> {
        match *self {
            BeamSpec::Angles(a) => {
                let angles = AngleSet::new(a.theta, a.phi, a.chi)?;
                Ok(Beam::Pure(WaveState::from_angles(a.amp, &angles)?))
            }
            BeamSpec::Jones(j) => Ok(Beam::Pure(wave_from_jones(&JonesAmpPhase {
                a1: j.a1,
                a2: j.a2,
                phi1: j.phi1,
                phi2: j.phi2,
            })?)),
            BeamSpec::Stokes(s) => {
                let s = StokesVector::from_array(s);
                s.validate(INPUT_TOL)?;
                if s.s0 <= 0.0 {
                    return Err(PolError::ZeroFlux);
                }
                if s.is_pure(INPUT_TOL) {
                    Ok(Beam::Pure(WaveState::from_stokes(&s, INPUT_TOL)?))
                } else {
                    Ok(Beam::Mixed(s))
                }
            }
        }
    }
}
