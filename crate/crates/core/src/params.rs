//! Model parameters in natural units.
//!
//! Every rate, detuning and Rabi frequency is measured in units of the
//! probe-coherence decay rate `gamma1`. Susceptibilities carry the overall
//! scale `kappa`; the atom number, dipole moments, mode volume and carrier
//! frequency never appear individually.

use std::fmt;
use std::str::FromStr;

use crate::error::{check, EitError, Result};

/// Mean coupling photon number of the reference parameter set.
pub const REFERENCE_ALPHA2: f64 = 500.0;
/// Mean-field coupling Rabi frequency `g2 * sqrt(n_alpha + 1)` of the
/// reference set, in units of `gamma1`.
pub const REFERENCE_OMEGA2_BAR: f64 = 0.5;
/// Default ground-state coherence decay (`gamma1 >> gamma3`).
pub const DEFAULT_GAMMA3: f64 = 1e-3;
/// Default group-index scale. Puts the mean group velocity at about
/// 3.3e-8 c (roughly 10 m/s) for the reference set at line centre.
pub const DEFAULT_GINDEX: f64 = 7.5e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Decay of the probe coherence rho_ab. The unit of every rate.
    pub gamma1: f64,
    /// Decay of the rho_ca coherence.
    pub gamma2: f64,
    /// Decay of the ground-state coherence rho_cb.
    pub gamma3: f64,
    /// Probe-mode vacuum coupling.
    pub g1: f64,
    /// Coupling-mode vacuum coupling.
    pub g2: f64,
    /// Susceptibility scale `g1^2 N / (omega1 gamma1)`.
    pub kappa: f64,
    /// Converts `-d(chi1/kappa)/d(delta1)` into the group-index excess.
    pub gindex: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        let g = coupling_for_mean_field(REFERENCE_OMEGA2_BAR, REFERENCE_ALPHA2);
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            gamma3: DEFAULT_GAMMA3,
            g1: g,
            g2: g,
            kappa: 1.0,
            gindex: DEFAULT_GINDEX,
        }
    }
}

impl SystemParams {
    /// Checks the parameter ranges. Couplings may be zero (decoupled limit)
    /// but not negative.
    pub fn validate(&self) -> Result<()> {
        let finite = |name, v: f64| check(v.is_finite(), name, v, "must be finite");
        finite("gamma1", self.gamma1)?;
        finite("gamma2", self.gamma2)?;
        finite("gamma3", self.gamma3)?;
        finite("g1", self.g1)?;
        finite("g2", self.g2)?;
        finite("kappa", self.kappa)?;
        finite("gindex", self.gindex)?;
        check(self.gamma1 > 0.0, "gamma1", self.gamma1, "must be > 0")?;
        check(self.gamma2 >= 0.0, "gamma2", self.gamma2, "must be >= 0")?;
        check(self.gamma3 >= 0.0, "gamma3", self.gamma3, "must be >= 0")?;
        check(self.g1 >= 0.0, "g1", self.g1, "must be >= 0")?;
        check(self.g2 >= 0.0, "g2", self.g2, "must be >= 0")?;
        check(self.kappa > 0.0, "kappa", self.kappa, "must be > 0")?;
        check(self.gindex >= 0.0, "gindex", self.gindex, "must be >= 0")
    }

    /// Mean-field coupling Rabi frequency `g2 * sqrt(n_alpha + 1)`.
    ///
    /// This is the convention of the decaying-coherence analysis; the
    /// dark-state Rabi frequencies in [`crate::dark_state::RabiTriple`]
    /// carry an extra factor of two.
    pub fn omega2_bar(&self, n_alpha: f64) -> f64 {
        self.g2 * (n_alpha + 1.0).sqrt()
    }

    pub fn with_gamma3(self, gamma3: f64) -> Self {
        Self { gamma3, ..self }
    }

    pub fn with_gindex(self, gindex: f64) -> Self {
        Self { gindex, ..self }
    }

    /// Recalibrates `g2` so that `g2 * sqrt(n_alpha + 1) = omega2_bar`.
    pub fn calibrated(self, omega2_bar: f64, n_alpha: f64) -> Self {
        Self {
            g2: coupling_for_mean_field(omega2_bar, n_alpha),
            ..self
        }
    }
}

/// `g` such that `g * sqrt(n + 1) = omega_bar`.
pub fn coupling_for_mean_field(omega_bar: f64, n_mean: f64) -> f64 {
    omega_bar / (n_mean + 1.0).sqrt()
}

/// Which steady-state regime is being evaluated.
///
/// * `A`: strong classical-like coupling, probe couplings dropped from the
///   drift matrix, all population in `|b>`.
/// * `B`: weak coupling with `n_alpha >> n_beta`; same per-sector form as
///   `A` but averaged over the coupling photon distribution.
/// * `C`: both fields weak and comparable; populations from the dark state
///   and a double photon-number average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    A,
    B,
    C,
}

impl FromStr for Case {
    type Err = EitError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" | "A" => Ok(Case::A),
            "b" | "B" => Ok(Case::B),
            "c" | "C" => Ok(Case::C),
            other => Err(EitError::UnknownCase(other.to_owned())),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
        })
    }
}
