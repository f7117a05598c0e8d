//! Group velocity as a function of the coupling photon number, its
//! coherent-state statistics, and the number–phase uncertainty bound.
//!
//! On sector `n2` the group velocity is `V/c = 1 / (1 + gindex X')` with
//! `X' = -d(chi1/kappa)/d delta1` (since `omega1 = omega_ab - delta1`). All
//! derivatives are analytic in the closed-form sector susceptibility.

use num_complex::Complex64;

use crate::error::{check, EitError, Result};
use crate::fock::{phase_expectations, poisson_weights, FockWeights};
use crate::params::SystemParams;

/// Denominators closer to zero than this are treated as a group-velocity pole.
pub const POLE_TOL: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Sign structure of the group velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupRegime {
    /// `0 < V < c`, normal dispersion.
    Subluminal,
    /// `V > c`, anomalous dispersion with `1 + gindex X' in (0, 1)`.
    Superluminal,
    /// `1 + gindex X' < 0`.
    Negative,
}

impl GroupRegime {
    fn of(denominator: f64) -> Self {
        if denominator >= 1.0 {
            GroupRegime::Subluminal
        } else if denominator > 0.0 {
            GroupRegime::Superluminal
        } else {
            GroupRegime::Negative
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GroupRegime::Subluminal => "slow",
            GroupRegime::Superluminal => "fast",
            GroupRegime::Negative => "negative",
        }
    }
}

// Pieces of chi(d, G) = N(d) / D(d, G) with
// N = i kappa gamma1 (gamma3 + i d), D = (gamma1 + i d)(gamma3 + i d) + G.
struct SectorForm {
    num: Complex64,
    dnum: Complex64,
    den: Complex64,
    dden: Complex64,
}

impl SectorForm {
    fn new(params: &SystemParams, coupling: f64, delta1: f64) -> Self {
        let scale = params.kappa * params.gamma1;
        let g1 = Complex64::new(params.gamma1, delta1);
        let g3 = Complex64::new(params.gamma3, delta1);
        Self {
            num: I * scale * g3,
            dnum: Complex64::new(-scale, 0.0),
            den: g1 * g3 + coupling,
            dden: I * (g1 + g3),
        }
    }

    /// d chi / d delta1.
    fn dchi_ddelta(&self) -> Complex64 {
        (self.dnum * self.den - self.num * self.dden) / (self.den * self.den)
    }

    /// d^2 chi / (d delta1 d G).
    fn dchi_ddelta_dcoupling(&self) -> Complex64 {
        let d2 = self.den * self.den;
        -self.dnum / d2 + 2.0 * self.num * self.dden / (d2 * self.den)
    }
}

fn coupling(params: &SystemParams, n2: f64) -> f64 {
    params.g2 * params.g2 * (n2 + 1.0)
}

/// Dispersion slope `X' = -d(chi1/kappa)/d delta1` for a (possibly
/// non-integer) coupling photon number.
pub fn dispersion_slope(params: &SystemParams, n2: f64, delta1: f64) -> f64 {
    let form = SectorForm::new(params, coupling(params, n2), delta1);
    -form.dchi_ddelta().re / params.kappa
}

/// `d chi1 / d omega1` in units of `kappa`, i.e. `X'` times `kappa`.
pub fn dchi1_domega(params: &SystemParams, n2: f64, delta1: f64) -> f64 {
    dispersion_slope(params, n2, delta1) * params.kappa
}

/// `d X' / d n2`, treating `n2` as continuous.
pub fn dispersion_slope_dn(params: &SystemParams, n2: f64, delta1: f64) -> f64 {
    let form = SectorForm::new(params, coupling(params, n2), delta1);
    -form.dchi_ddelta_dcoupling().re * params.g2 * params.g2 / params.kappa
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VgSector {
    /// `V_g / c`, signed.
    pub vg_over_c: f64,
    /// `gindex * X'`.
    pub index_excess: f64,
    pub regime: GroupRegime,
}

fn vg_continuous(params: &SystemParams, n2: f64, delta1: f64) -> Result<VgSector> {
    let index_excess = params.gindex * dispersion_slope(params, n2, delta1);
    let denominator = 1.0 + index_excess;
    if !denominator.is_finite() || denominator.abs() < POLE_TOL {
        return Err(EitError::Singular {
            n1: 0,
            n2: n2.round().max(0.0) as u64,
            what: format!("group-velocity pole (1 + gindex X' = {denominator:e})"),
        });
    }
    Ok(VgSector {
        vg_over_c: 1.0 / denominator,
        index_excess,
        regime: GroupRegime::of(denominator),
    })
}

/// Group velocity of coupling-photon sector `n2`.
pub fn vg_sector(params: &SystemParams, n2: u64, delta1: f64) -> Result<VgSector> {
    check(delta1.is_finite(), "delta1", delta1, "must be finite")?;
    vg_continuous(params, n2 as f64, delta1)
}

/// Group velocity of the mean-field model, with `n2 -> n_alpha`.
pub fn vg_mean_field(params: &SystemParams, n_alpha: f64, delta1: f64) -> Result<VgSector> {
    check(
        n_alpha >= 0.0 && n_alpha.is_finite(),
        "n_alpha",
        n_alpha,
        "must be finite and >= 0",
    )?;
    check(delta1.is_finite(), "delta1", delta1, "must be finite")?;
    vg_continuous(params, n_alpha, delta1)
}

/// `dF/dn2` of `f(n2) = V_g(n2)/c` at a continuous `n2`.
pub fn vg_slope(params: &SystemParams, n2: f64, delta1: f64) -> Result<f64> {
    let v = vg_continuous(params, n2, delta1)?;
    let dx = dispersion_slope_dn(params, n2, delta1);
    Ok(-params.gindex * dx * v.vg_over_c * v.vg_over_c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupVelocityStats {
    /// Mean of `V_g/c` over the photon-number distribution.
    pub vg_mean: f64,
    /// Exact spread of `V_g/c` over the distribution.
    pub vg_std: f64,
    /// `vg_std / |vg_mean|`.
    pub rel_fluct: f64,
    /// `V_g/c` at the mean photon number.
    pub vg_at_mean: f64,
    /// Linearization slope `dF/dn2` at the mean photon number (units of c
    /// per photon).
    pub slope_f: f64,
    /// Spread predicted by the linearization, `|slope_f| * std(n2)`.
    pub linear_std: f64,
    /// `linear_std / |vg_at_mean|`.
    pub linear_rel_fluct: f64,
    /// Smallest `gindex * X'` over the retained support.
    pub index_excess_min: f64,
    /// Most anomalous regime met on the retained support.
    pub regime: GroupRegime,
}

/// Group-velocity statistics over an arbitrary photon-number distribution,
/// linearized about `n_ref`.
pub fn vg_stats_with_weights(
    params: &SystemParams,
    weights: &FockWeights,
    n_ref: f64,
    delta1: f64,
) -> Result<GroupVelocityStats> {
    params.validate()?;
    check(delta1.is_finite(), "delta1", delta1, "must be finite")?;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut n_sum = 0.0;
    let mut n_sq = 0.0;
    let mut norm = 0.0;
    let mut index_excess_min = f64::INFINITY;
    let mut regime = GroupRegime::Subluminal;
    for (n, w) in weights.iter() {
        let v = vg_sector(params, n, delta1)?;
        sum += w * v.vg_over_c;
        sum_sq += w * v.vg_over_c * v.vg_over_c;
        let nf = n as f64;
        n_sum += w * nf;
        n_sq += w * nf * nf;
        norm += w;
        index_excess_min = index_excess_min.min(v.index_excess);
        regime = regime.max(v.regime);
    }
    let vg_std = (sum_sq - sum * sum).max(0.0).sqrt();
    let n_mean = n_sum / norm;
    let n_std = (n_sq / norm - n_mean * n_mean).max(0.0).sqrt();

    let vg_at_mean = vg_continuous(params, n_ref, delta1)?.vg_over_c;
    let slope_f = vg_slope(params, n_ref, delta1)?;
    let linear_std = slope_f.abs() * n_std;
    Ok(GroupVelocityStats {
        vg_mean: sum,
        vg_std,
        rel_fluct: vg_std / sum.abs(),
        vg_at_mean,
        slope_f,
        linear_std,
        linear_rel_fluct: linear_std / vg_at_mean.abs(),
        index_excess_min,
        regime,
    })
}

/// Group-velocity statistics for a coherent coupling field with mean photon
/// number `n_alpha`.
pub fn vg_stats(
    params: &SystemParams,
    n_alpha: f64,
    delta1: f64,
    tail_eps: f64,
) -> Result<GroupVelocityStats> {
    let w = poisson_weights(n_alpha, tail_eps)?;
    vg_stats_with_weights(params, &w, n_alpha, delta1)
}

/// Both sides of `dV dcos(phi) >= |F <sin(phi)>| / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    /// `dV_lin * dcos(phi)`, with `dV_lin = |F| std(n2)` the spread of the
    /// linearized operator to which the commutator applies.
    pub lhs: f64,
    /// `|F <sin(phi)>| / 2`.
    pub rhs: f64,
    pub satisfied: bool,
    /// Same product with the exact Poisson spread of `V_g`.
    pub lhs_exact: f64,
    pub satisfied_exact: bool,
    pub slope_f: f64,
    pub cos_std: f64,
    pub sin_mean: f64,
}

/// Evaluates the group-velocity / phase uncertainty relation for the
/// coherent coupling amplitude `alpha`.
pub fn uncertainty_bound(
    params: &SystemParams,
    alpha: Complex64,
    delta1: f64,
    tail_eps: f64,
) -> Result<UncertaintyReport> {
    let stats = vg_stats(params, alpha.norm_sqr(), delta1, tail_eps)?;
    let phase = phase_expectations(alpha, tail_eps)?;
    let lhs = stats.linear_std * phase.cos_std;
    let lhs_exact = stats.vg_std * phase.cos_std;
    let rhs = 0.5 * (stats.slope_f * phase.sin_mean).abs();
    let holds = |lhs: f64| lhs >= rhs - 1e-10 * lhs.max(rhs).max(1e-30);
    Ok(UncertaintyReport {
        lhs,
        rhs,
        satisfied: holds(lhs),
        lhs_exact,
        satisfied_exact: holds(lhs_exact),
        slope_f: stats.slope_f,
        cos_std: phase.cos_std,
        sin_mean: phase.sin_mean,
    })
}
