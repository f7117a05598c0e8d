//! Operator-valued probe susceptibility and its photon-number statistics.
//!
//! On a Fock sector the susceptibility operator is a complex number; its
//! coherent-state mean and spread follow from Poisson-weighted sums over the
//! coupling (and, in case (c), probe) photon numbers. All values include the
//! `kappa * gamma1` prefactor.

use num_complex::Complex64;

use crate::dark_state::DarkState;
use crate::error::{check, EitError, Result};
use crate::fock::{poisson_weights, try_expect_diag, CoherentPair, DiagMoments, FockWeights};
use crate::params::{Case, SystemParams};

/// Relative threshold (in units of `kappa`) below which a mean is treated
/// as zero and the matching relative fluctuation is left undefined.
pub const MEAN_FLOOR: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibility {
    /// Dispersive part.
    pub chi1: f64,
    /// Absorptive part.
    pub chi2: f64,
}

impl Susceptibility {
    pub fn from_complex(z: Complex64) -> Self {
        Self {
            chi1: z.re,
            chi2: z.im,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.chi1, self.chi2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilityStats {
    pub chi1_mean: f64,
    pub chi2_mean: f64,
    pub chi1_std: f64,
    pub chi2_std: f64,
    /// `chi1_std / |chi1_mean|`, `None` when the mean vanishes.
    pub p1: Option<f64>,
    /// `chi2_std / |chi2_mean|`, `None` when the mean vanishes.
    pub p2: Option<f64>,
}

impl SusceptibilityStats {
    fn from_moments(m: &DiagMoments, kappa: f64) -> Self {
        let relative = |std: f64, mean: f64| {
            if mean.abs() < MEAN_FLOOR * kappa {
                None
            } else {
                Some(std / mean.abs())
            }
        };
        let (chi1_std, chi2_std) = (m.std_re(), m.std_im());
        Self {
            chi1_mean: m.mean.re,
            chi2_mean: m.mean.im,
            chi1_std,
            chi2_std,
            p1: relative(chi1_std, m.mean.re),
            p2: relative(chi2_std, m.mean.im),
        }
    }

    fn deterministic(chi: Complex64, kappa: f64) -> Self {
        Self::from_moments(
            &DiagMoments {
                mean: chi,
                second_moment_re: chi.re * chi.re,
                second_moment_im: chi.im * chi.im,
            },
            kappa,
        )
    }
}

fn singular(n1: u64, n2: u64) -> EitError {
    EitError::Singular {
        n1,
        n2,
        what: "vanishing susceptibility denominator".into(),
    }
}

/// `i kappa gamma1 (gamma3 + i d) / [(gamma1 + i d)(gamma3 + i d) + coupling]`.
fn lambda_form(params: &SystemParams, coupling: f64, delta1: f64) -> Option<Complex64> {
    let g3 = Complex64::new(params.gamma3, delta1);
    let g1 = Complex64::new(params.gamma1, delta1);
    let den = g1 * g3 + coupling;
    if den.norm() == 0.0 {
        return None;
    }
    Some(I * (params.kappa * params.gamma1) * g3 / den)
}

/// Case (c) closed form with an explicit `rho_bb`.
///
/// `i kappa gamma1 rho_bb [(gamma3 + i d) gamma2 + g1^2 (n1+1)] /
///  [(gamma1 + i d)(gamma3 + i d) gamma2 + gamma2 g2^2 (n2+1) + (gamma1 + i d) g1^2 (n1+1)]`
pub fn chi_case_c_with_population(
    params: &SystemParams,
    n1: u64,
    n2: u64,
    delta1: f64,
    rho_bb0: f64,
) -> Result<Susceptibility> {
    let probe = params.g1 * params.g1 * (n1 as f64 + 1.0);
    let coupling = params.g2 * params.g2 * (n2 as f64 + 1.0);
    let g1 = Complex64::new(params.gamma1, delta1);
    let g3 = Complex64::new(params.gamma3, delta1);
    let num = g3 * params.gamma2 + probe;
    let den = g1 * g3 * params.gamma2 + params.gamma2 * coupling + g1 * probe;
    if den.norm() == 0.0 {
        return Err(singular(n1, n2));
    }
    let chi = I * (params.kappa * params.gamma1 * rho_bb0) * num / den;
    Ok(Susceptibility::from_complex(chi))
}

/// Susceptibility of Fock sector `(n1, n2)`.
///
/// Cases (a) and (b) share one form and ignore `n1`; case (c) takes its
/// ground population from the zeroth-order dark state.
pub fn chi_sector(
    case: Case,
    params: &SystemParams,
    n1: u64,
    n2: u64,
    delta1: f64,
) -> Result<Susceptibility> {
    match case {
        Case::A | Case::B => {
            let coupling = params.g2 * params.g2 * (n2 as f64 + 1.0);
            lambda_form(params, coupling, delta1)
                .map(Susceptibility::from_complex)
                .ok_or_else(|| singular(n1, n2))
        }
        Case::C => {
            let (rho_bb0, _) = DarkState::populations(params, n1, n2);
            chi_case_c_with_population(params, n1, n2, delta1, rho_bb0)
        }
    }
}

/// Mean-field susceptibility with `g2^2 a2 a2^dag -> g2^2 (n_alpha + 1)`.
pub fn chi_mean_case_a(params: &SystemParams, n_alpha: f64, delta1: f64) -> Result<Susceptibility> {
    check(n_alpha >= 0.0, "n_alpha", n_alpha, "must be >= 0")?;
    let omega2_bar = params.omega2_bar(n_alpha);
    lambda_form(params, omega2_bar * omega2_bar, delta1)
        .map(Susceptibility::from_complex)
        .ok_or_else(|| EitError::Singular {
            n1: 0,
            n2: n_alpha.round() as u64,
            what: "vanishing mean-field denominator".into(),
        })
}

/// Photon-number distributions for a case, built once and reused across a
/// detuning sweep.
#[derive(Debug, Clone)]
pub struct CaseWeights {
    pub coupling: FockWeights,
    /// Probe distribution; only populated for case (c).
    pub probe: Option<FockWeights>,
}

impl CaseWeights {
    pub fn new(case: Case, fields: &CoherentPair, tail_eps: f64) -> Result<Self> {
        let coupling = poisson_weights(fields.n_alpha(), tail_eps)?;
        let probe = match case {
            Case::C => Some(poisson_weights(fields.n_beta(), tail_eps)?),
            _ => None,
        };
        Ok(Self { coupling, probe })
    }
}

/// Moments of the sector susceptibility over the given distributions.
pub fn chi_moments(
    case: Case,
    params: &SystemParams,
    weights: &CaseWeights,
    delta1: f64,
) -> Result<DiagMoments> {
    let over_coupling = |n1: u64| {
        try_expect_diag(
            |n2| chi_sector(case, params, n1, n2, delta1).map(|s| s.to_complex()),
            &weights.coupling,
        )
    };
    match (case, &weights.probe) {
        (Case::C, Some(probe)) => {
            let parts = probe
                .iter()
                .map(|(n1, w)| over_coupling(n1).map(|m| (w, m)))
                .collect::<Result<Vec<_>>>()?;
            Ok(DiagMoments::mix(parts))
        }
        _ => over_coupling(0),
    }
}

/// Mean, spread and relative fluctuation of `chi1` and `chi2`.
///
/// Case (b) averages over the coupling photon number; case (c) over both
/// modes independently (total omitted mass at most `2 tail_eps`). Case (a)
/// is the mean-field model, which has no photon-number spread.
pub fn chi_stats(
    case: Case,
    params: &SystemParams,
    fields: &CoherentPair,
    delta1: f64,
    tail_eps: f64,
) -> Result<SusceptibilityStats> {
    params.validate()?;
    check(delta1.is_finite(), "delta1", delta1, "must be finite")?;
    if case == Case::A {
        let chi = chi_mean_case_a(params, fields.n_alpha(), delta1)?;
        return Ok(SusceptibilityStats::deterministic(
            chi.to_complex(),
            params.kappa,
        ));
    }
    let weights = CaseWeights::new(case, fields, tail_eps)?;
    chi_stats_with_weights(case, params, &weights, delta1)
}

pub fn chi_stats_with_weights(
    case: Case,
    params: &SystemParams,
    weights: &CaseWeights,
    delta1: f64,
) -> Result<SusceptibilityStats> {
    let m = chi_moments(case, params, weights, delta1)?;
    Ok(SusceptibilityStats::from_moments(&m, params.kappa))
}

/// One detuning of a sweep; failures are kept per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub delta1: f64,
    pub stats: Result<SusceptibilityStats>,
}

/// [`chi_stats`] over a detuning grid, in grid order.
pub fn fluctuation_sweep(
    case: Case,
    params: &SystemParams,
    fields: &CoherentPair,
    delta_grid: &[f64],
    tail_eps: f64,
) -> Result<Vec<SweepPoint>> {
    check(
        !delta_grid.is_empty(),
        "delta_grid",
        0.0,
        "must be nonempty",
    )?;
    params.validate()?;
    let weights = match case {
        Case::A => None,
        _ => Some(CaseWeights::new(case, fields, tail_eps)?),
    };
    Ok(delta_grid
        .iter()
        .map(|&delta1| SweepPoint {
            delta1,
            stats: match &weights {
                Some(w) => chi_stats_with_weights(case, params, w, delta1),
                None => chi_stats(case, params, fields, delta1, tail_eps),
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonant_transparency() {
        let p = SystemParams {
            gamma3: 0.0,
            ..SystemParams::default()
        };
        for n2 in [0, 10, 500] {
            let s = chi_sector(Case::B, &p, 0, n2, 0.0).unwrap();
            assert_eq!((s.chi1, s.chi2), (0.0, 0.0));
        }
    }

    #[test]
    fn two_level_limit_at_one_linewidth() {
        let p = SystemParams {
            g2: 0.0,
            gamma3: 0.0,
            ..SystemParams::default()
        };
        let s = chi_sector(Case::A, &p, 0, 3, 1.0).unwrap();
        // i kappa (i d) / [(1 + i d)(i d)] = i kappa / (1 + i) = kappa (1 + i) / 2
        assert!((s.chi2 - 0.5).abs() < 1e-15);
        assert!((s.chi1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pure_absorption_at_line_centre() {
        let p = SystemParams::default();
        let s = chi_mean_case_a(&p, 500.0, 0.0).unwrap();
        let expect = p.gamma3 / (p.gamma3 + 0.25);
        assert_eq!(s.chi1, 0.0);
        assert!((s.chi2 - expect).abs() < 1e-15);
    }

    #[test]
    fn vacuum_coupling_is_deterministic() {
        let p = SystemParams {
            gamma3: 0.0,
            ..SystemParams::default()
        };
        let fields = CoherentPair::from_photon_numbers(0.0, 0.0, 0.0).unwrap();
        let st = chi_stats(Case::B, &p, &fields, 0.3, 1e-12).unwrap();
        let single = chi_sector(Case::B, &p, 0, 0, 0.3).unwrap();
        assert_eq!(st.chi1_mean, single.chi1);
        assert_eq!(st.chi2_mean, single.chi2);
        assert_eq!(st.chi1_std, 0.0);
        assert_eq!(st.chi2_std, 0.0);
    }

    #[test]
    fn zero_mean_flags_relative_fluctuation() {
        let p = SystemParams {
            gamma3: 0.0,
            ..SystemParams::default()
        };
        let fields = CoherentPair::from_photon_numbers(500.0, 0.0, 0.0).unwrap();
        let rows = fluctuation_sweep(Case::B, &p, &fields, &[0.0], 1e-12).unwrap();
        let st = rows[0].stats.as_ref().unwrap();
        assert_eq!(st.chi1_mean, 0.0);
        assert_eq!(st.chi2_mean, 0.0);
        assert_eq!(st.p1, None);
        assert_eq!(st.p2, None);
    }

    #[test]
    fn empty_grid_rejected() {
        let fields = CoherentPair::from_photon_numbers(5.0, 0.0, 0.0).unwrap();
        assert!(fluctuation_sweep(Case::B, &SystemParams::default(), &fields, &[], 1e-12).is_err());
    }

    #[test]
    fn singular_sector_reported() {
        // gamma3 = 0, g2 = 0, delta1 = 0 zeroes the denominator
        let p = SystemParams {
            gamma3: 0.0,
            g2: 0.0,
            ..SystemParams::default()
        };
        let err = chi_sector(Case::B, &p, 0, 4, 0.0).unwrap_err();
        assert!(matches!(err, EitError::Singular { n2: 4, .. }));
    }
}
