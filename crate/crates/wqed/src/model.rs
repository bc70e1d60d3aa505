//! Model parameters and kinematics for a tight-binding photon chain coupled,
//! at site 0, to a three-level ladder emitter whose upper transition is driven
//! by a control cavity holding `n` photons.
//!
//! All energies are measured in units of the site-emitter coupling; hbar = 1
//! and the emitter ground level defines the zero of energy.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Ratio above which the rotating-wave treatment of the control drive is
/// considered unreliable. Report-only, never blocks a computation.
pub const RWA_RATIO_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ModelError {
    #[error("invalid model parameters: {0}")]
    Invalid(String),
}

/// Plain parameter bag used for construction and (de)serialization.
///
/// `validate` turns it into a [`ModelParams`]; deserializing rejects unknown
/// keys so a typo in a config file fails loudly instead of being ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModelParams {
    /// Bare frequency of every waveguide cavity.
    pub omega_a: f64,
    /// Frequency of the control cavity driving the upper transition.
    pub omega_b: f64,
    /// Energy of the middle emitter level.
    pub omega_2: f64,
    /// Energy of the top emitter level.
    pub omega_3: f64,
    /// Hopping rate between neighbouring waveguide cavities.
    pub xi: f64,
    /// Coupling of the lower transition to the site-0 cavity; the unit of energy.
    #[serde(default = "default_g_a")]
    pub g_a: f64,
    /// Coupling of the upper transition to the control cavity.
    pub g_b: f64,
    /// Control-cavity photon number.
    pub n: u32,
}

fn default_g_a() -> f64 {
    1.0
}

impl Default for RawModelParams {
    fn default() -> Self {
        RawModelParams {
            omega_a: 0.0,
            omega_b: 1.0,
            omega_2: 2.0,
            omega_3: 3.0,
            xi: 2.0,
            g_a: 1.0,
            g_b: 1.0,
            n: 1,
        }
    }
}

impl RawModelParams {
    pub fn validate(self) -> Result<ModelParams, ModelError> {
        ModelParams::try_from(self)
    }
}

/// Validated model parameters.
///
/// Held immutable so every downstream quantity can trust the invariants:
/// finite fields, `xi > 0`, `g_a >= 0`, `g_b >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModelParams", into = "RawModelParams")]
pub struct ModelParams {
    omega_a: f64,
    omega_b: f64,
    omega_2: f64,
    omega_3: f64,
    xi: f64,
    g_a: f64,
    g_b: f64,
    n: u32,
}

impl TryFrom<RawModelParams> for ModelParams {
    type Error = ModelError;

    fn try_from(raw: RawModelParams) -> Result<Self, ModelError> {
        let fields = [
            ("omega_a", raw.omega_a),
            ("omega_b", raw.omega_b),
            ("omega_2", raw.omega_2),
            ("omega_3", raw.omega_3),
            ("xi", raw.xi),
            ("g_a", raw.g_a),
            ("g_b", raw.g_b),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(ModelError::Invalid(format!("{name} must be finite")));
            }
        }
        if raw.xi <= 0.0 {
            return Err(ModelError::Invalid(format!(
                "xi must be positive, got {}",
                raw.xi
            )));
        }
        if raw.g_a < 0.0 {
            return Err(ModelError::Invalid(format!(
                "g_a must be non-negative, got {}",
                raw.g_a
            )));
        }
        if raw.g_b < 0.0 {
            return Err(ModelError::Invalid(format!(
                "g_b must be non-negative, got {}",
                raw.g_b
            )));
        }
        Ok(ModelParams {
            omega_a: raw.omega_a,
            omega_b: raw.omega_b,
            omega_2: raw.omega_2,
            omega_3: raw.omega_3,
            xi: raw.xi,
            g_a: raw.g_a,
            g_b: raw.g_b,
            n: raw.n,
        })
    }
}

impl From<ModelParams> for RawModelParams {
    fn from(p: ModelParams) -> Self {
        RawModelParams {
            omega_a: p.omega_a,
            omega_b: p.omega_b,
            omega_2: p.omega_2,
            omega_3: p.omega_3,
            xi: p.xi,
            g_a: p.g_a,
            g_b: p.g_b,
            n: p.n,
        }
    }
}

impl ModelParams {
    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_b(&self) -> f64 {
        self.omega_b
    }

    pub fn omega_2(&self) -> f64 {
        self.omega_2
    }

    pub fn omega_3(&self) -> f64 {
        self.omega_3
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn g_a(&self) -> f64 {
        self.g_a
    }

    pub fn g_b(&self) -> f64 {
        self.g_b
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Upper transition energy omega_3 - omega_2.
    pub fn omega_32(&self) -> f64 {
        self.omega_3 - self.omega_2
    }

    /// Detuning of the control drive from the upper transition.
    pub fn delta_b(&self) -> f64 {
        self.omega_32() - self.omega_b
    }

    /// Effective control strength g_b^2 * n. Zero means the top level is
    /// decoupled and the emitter acts as a two-level system.
    pub fn control_strength(&self) -> f64 {
        self.g_b * self.g_b * f64::from(self.n)
    }

    /// g_b * sqrt(n), the Rabi coupling inside the driven doublet.
    pub fn control_coupling(&self) -> f64 {
        self.g_b * f64::from(self.n).sqrt()
    }

    /// Lower edge of the propagation band, omega_a - 2 xi.
    pub fn band_min(&self) -> f64 {
        self.omega_a - 2.0 * self.xi
    }

    /// Upper edge of the propagation band, omega_a + 2 xi.
    pub fn band_max(&self) -> f64 {
        self.omega_a + 2.0 * self.xi
    }
}

/// Band energy of a chain photon with momentum `k`:
/// Omega_k = omega_a - 2 xi cos k. Periodic and even in `k`.
pub fn dispersion(params: &ModelParams, k: f64) -> f64 {
    params.omega_a - 2.0 * params.xi * k.cos()
}

/// Reduce a momentum to the principal zone (-pi, pi].
pub fn reduce_k(k: f64) -> f64 {
    // in-zone momenta pass through untouched, so grid values survive exactly
    if k > -PI && k <= PI {
        return k;
    }
    let r = (PI - k).rem_euclid(2.0 * PI);
    PI - r
}

/// Kinematics of one incident momentum: everything about the scattering
/// problem that does not involve the couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPoint {
    k: f64,
    omega_k: f64,
    energy: f64,
    delta_a: f64,
    delta_b: f64,
}

impl ScatteringPoint {
    /// Momentum reduced to (-pi, pi].
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Band energy of the incident photon.
    pub fn omega_k(&self) -> f64 {
        self.omega_k
    }

    /// Total energy of the one-excitation state, n omega_b + Omega_k.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Detuning of the incident photon from the lower transition,
    /// omega_2 - Omega_k.
    pub fn delta_a(&self) -> f64 {
        self.delta_a
    }

    /// Control-drive detuning omega_32 - omega_b (copied from the parameters).
    pub fn delta_b(&self) -> f64 {
        self.delta_b
    }
}

/// Build the kinematic record for momentum `k` (any real value; reduced
/// internally).
pub fn make_point(params: &ModelParams, k: f64) -> ScatteringPoint {
    let k = reduce_k(k);
    let omega_k = dispersion(params, k);
    ScatteringPoint {
        k,
        omega_k,
        energy: f64::from(params.n) * params.omega_b + omega_k,
        delta_a: params.omega_2 - omega_k,
        delta_b: params.delta_b(),
    }
}

/// Outcome of the rotating-wave sanity check on the control drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaReport {
    /// g_b sqrt(n) / min(omega_2, omega_3); infinite when the smaller level
    /// is not positive while the drive couples.
    pub ratio: f64,
    pub threshold: f64,
    pub valid: bool,
}

/// Check that the control Rabi coupling stays far below the emitter level
/// energies. Informational only: strong drives are still computed, the flag
/// just marks where the underlying rotating-wave model becomes doubtful.
pub fn rwa_validity(params: &ModelParams) -> RwaReport {
    let coupling = params.control_coupling();
    let ratio = if coupling == 0.0 {
        0.0
    } else {
        let reference = params.omega_2.min(params.omega_3);
        if reference > 0.0 {
            coupling / reference
        } else {
            f64::INFINITY
        }
    };
    RwaReport {
        ratio,
        threshold: RWA_RATIO_THRESHOLD,
        valid: ratio <= RWA_RATIO_THRESHOLD,
    }
}
