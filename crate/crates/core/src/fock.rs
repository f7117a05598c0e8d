//! Coherent-state photon statistics.
//!
//! Operators that are functions of the number operators act as scalars on a
//! Fock sector, so coherent-state expectations reduce to Poisson-weighted
//! sums. [`poisson_weights`] builds the truncated distribution with a
//! certified tail bound, [`expect_diag`] sums a sector function against it,
//! and [`phase_expectations`] evaluates the Susskind–Glogower phase
//! operators, whose matrix elements are off-diagonal in `n`.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;

use crate::error::{check, EitError, Result};

/// Default omitted-probability budget for photon-number sums.
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;

/// Two-mode coherent state `|alpha, beta>` (coupling, probe).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPair {
    alpha: Complex64,
    beta: Complex64,
}

impl CoherentPair {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        check(alpha.is_finite(), "alpha", alpha.norm(), "must be finite")?;
        check(beta.is_finite(), "beta", beta.norm(), "must be finite")?;
        Ok(Self { alpha, beta })
    }

    /// Builds the pair from mean photon numbers and a coupling-mode phase.
    /// The probe amplitude is taken real.
    pub fn from_photon_numbers(n_alpha: f64, n_beta: f64, alpha_phase: f64) -> Result<Self> {
        check(
            n_alpha >= 0.0 && n_alpha.is_finite(),
            "alpha2",
            n_alpha,
            "must be finite and >= 0",
        )?;
        check(
            n_beta >= 0.0 && n_beta.is_finite(),
            "beta2",
            n_beta,
            "must be finite and >= 0",
        )?;
        check(
            alpha_phase.is_finite(),
            "alpha_phase",
            alpha_phase,
            "must be finite",
        )?;
        Self::new(
            Complex64::from_polar(n_alpha.sqrt(), alpha_phase),
            Complex64::new(n_beta.sqrt(), 0.0),
        )
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// Mean coupling photon number `|alpha|^2`.
    pub fn n_alpha(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    /// Mean probe photon number `|beta|^2`.
    pub fn n_beta(&self) -> f64 {
        self.beta.norm_sqr()
    }
}

/// Truncated photon-number distribution on a contiguous support.
#[derive(Debug, Clone, PartialEq)]
pub struct FockWeights {
    mean: f64,
    n_lo: u64,
    weights: Vec<f64>,
    tail_mass: f64,
}

impl FockWeights {
    /// All probability on a single Fock state.
    pub fn point_mass(n: u64) -> Self {
        Self {
            mean: n as f64,
            n_lo: n,
            weights: vec![1.0],
            tail_mass: 0.0,
        }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Certified upper bound on the probability outside the support.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn support(&self) -> RangeInclusive<u64> {
        self.n_lo..=self.n_hi()
    }

    pub fn n_lo(&self) -> u64 {
        self.n_lo
    }

    pub fn n_hi(&self) -> u64 {
        self.n_lo + self.weights.len() as u64 - 1
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of `n`, zero outside the support.
    pub fn weight(&self, n: u64) -> f64 {
        n.checked_sub(self.n_lo)
            .and_then(|k| self.weights.get(k as usize))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `(n, weight)` pairs in ascending `n`.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(move |(k, &w)| (self.n_lo + k as u64, w))
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

// ln(n!) for n < 16, by direct summation.
fn ln_factorial_small(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `ln(e^-mean mean^n / n!)`.
///
/// For `n >= 16` the Stirling expansion is folded into the saddle-point form
/// `n ln(mean/n) + (n - mean) - ln(2 pi n)/2 - corr(n)`, which avoids the
/// catastrophic cancellation of `n ln(mean) - mean - ln(n!)` at large `n`.
pub(crate) fn ln_poisson_pmf(n: u64, mean: f64) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    if n < 16 {
        let nf = n as f64;
        let lead = if n == 0 { 0.0 } else { nf * mean.ln() };
        return lead - mean - ln_factorial_small(n);
    }
    let nf = n as f64;
    let inv = 1.0 / nf;
    let inv2 = inv * inv;
    let corr = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    nf * ((mean - nf) / nf).ln_1p() + (nf - mean) - 0.5 * (2.0 * PI * nf).ln() - corr
}

fn pmf(n: u64, mean: f64) -> f64 {
    ln_poisson_pmf(n, mean).exp()
}

// Geometric bound on the mass strictly below `lo`. Requires `lo <= mean`.
fn left_tail_bound(lo: u64, mean: f64) -> f64 {
    if lo == 0 {
        return 0.0;
    }
    let ratio = (lo - 1) as f64 / mean;
    pmf(lo - 1, mean) / (1.0 - ratio)
}

// Geometric bound on the mass strictly above `hi`. Requires `hi >= floor(mean)`.
fn right_tail_bound(hi: u64, mean: f64) -> f64 {
    let ratio = mean / (hi + 2) as f64;
    pmf(hi + 1, mean) / (1.0 - ratio)
}

/// Truncated Poisson distribution with `P(n) = e^-mean mean^n / n!`.
///
/// Starting from the mode, the support grows one site at a time on whichever
/// side currently has the larger tail bound, until the two geometric tail
/// bounds sum to at most `tail_eps`. Each weight is evaluated independently
/// in log domain, so `mean` in the hundreds or thousands is fine.
pub fn poisson_weights(mean: f64, tail_eps: f64) -> Result<FockWeights> {
    check(
        mean.is_finite() && mean >= 0.0,
        "mean",
        mean,
        "must be finite and >= 0",
    )?;
    check(
        tail_eps > 0.0 && tail_eps < 1.0,
        "tail_eps",
        tail_eps,
        "must lie in (0, 1)",
    )?;
    if mean == 0.0 {
        return Ok(FockWeights::point_mass(0));
    }

    let mode = mean.floor() as u64;
    let (mut lo, mut hi) = (mode, mode);
    let mut left = left_tail_bound(lo, mean);
    let mut right = right_tail_bound(hi, mean);
    while left + right > tail_eps {
        if left > right {
            lo -= 1;
            left = left_tail_bound(lo, mean);
        } else {
            hi += 1;
            right = right_tail_bound(hi, mean);
        }
    }

    let weights = (lo..=hi).map(|n| pmf(n, mean)).collect();
    Ok(FockWeights {
        mean,
        n_lo: lo,
        weights,
        tail_mass: left + right,
    })
}

/// First and second moments of a complex sector function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagMoments {
    pub mean: Complex64,
    /// `sum w(n) Re f(n)^2`.
    pub second_moment_re: f64,
    /// `sum w(n) Im f(n)^2`.
    pub second_moment_im: f64,
}

impl DiagMoments {
    pub fn std_re(&self) -> f64 {
        (self.second_moment_re - self.mean.re * self.mean.re)
            .max(0.0)
            .sqrt()
    }

    pub fn std_im(&self) -> f64 {
        (self.second_moment_im - self.mean.im * self.mean.im)
            .max(0.0)
            .sqrt()
    }

    fn zero() -> Self {
        Self {
            mean: Complex64::new(0.0, 0.0),
            second_moment_re: 0.0,
            second_moment_im: 0.0,
        }
    }

    fn accumulate(&mut self, w: f64, value: Complex64) {
        self.mean += value * w;
        self.second_moment_re += w * value.re * value.re;
        self.second_moment_im += w * value.im * value.im;
    }

    /// Weighted sum of conditional moments: `sum_k w_k * m_k`.
    pub(crate) fn mix(parts: impl IntoIterator<Item = (f64, DiagMoments)>) -> Self {
        let mut acc = Self::zero();
        for (w, m) in parts {
            acc.mean += m.mean * w;
            acc.second_moment_re += w * m.second_moment_re;
            acc.second_moment_im += w * m.second_moment_im;
        }
        acc
    }
}

/// `sum_n f(n) w(n)` together with the second moments of the real and
/// imaginary parts, in ascending `n`.
pub fn expect_diag<F>(f: F, w: &FockWeights) -> Result<DiagMoments>
where
    F: Fn(u64) -> Complex64,
{
    try_expect_diag(|n| Ok(f(n)), w)
}

/// Like [`expect_diag`], for sector functions that can fail.
pub fn try_expect_diag<F>(mut f: F, w: &FockWeights) -> Result<DiagMoments>
where
    F: FnMut(u64) -> Result<Complex64>,
{
    let mut acc = DiagMoments::zero();
    for (n, wn) in w.iter() {
        let value = f(n)?;
        if !value.is_finite() {
            return Err(EitError::NonFinite { n });
        }
        acc.accumulate(wn, value);
    }
    Ok(acc)
}

/// Coherent-state expectations of the Susskind–Glogower phase operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseExpectations {
    pub cos_mean: f64,
    pub sin_mean: f64,
    pub cos2_mean: f64,
    pub cos_std: f64,
}

/// Expectations of `cos(phi) = (E- + E+)/2` and `sin(phi) = (E- - E+)/(2i)`
/// in the coherent state `|alpha>`, where `E-` has unit matrix elements
/// `<n|E-|n+1> = 1`.
///
/// With `c_n = e^{i n theta} sqrt(P(n))`, `<E-> = e^{i theta} sum sqrt(P(n) P(n+1))`
/// and `<E-^2> = e^{2 i theta} sum sqrt(P(n) P(n+2))`. `E- E+ = 1` and
/// `E+ E- = 1 - |0><0|` give the diagonal part of `cos^2`. The sums run over
/// the truncated Poisson support; by Cauchy–Schwarz the omitted part of each
/// is below `trunc_eps`.
pub fn phase_expectations(alpha: Complex64, trunc_eps: f64) -> Result<PhaseExpectations> {
    check(alpha.is_finite(), "alpha", alpha.norm(), "must be finite")?;
    // overlap sums lose the dropped mass plus one boundary pair
    let w = poisson_weights(alpha.norm_sqr(), 0.25 * trunc_eps)?;
    let theta = alpha.arg();
    let amp: Vec<f64> = w.weights().iter().map(|p| p.sqrt()).collect();

    let overlap = |shift: usize| -> f64 {
        amp.iter()
            .zip(amp.iter().skip(shift))
            .map(|(a, b)| a * b)
            .sum()
    };
    let s1 = overlap(1);
    let s2 = overlap(2);

    let cos_mean = theta.cos() * s1;
    let sin_mean = theta.sin() * s1;
    let norm = w.total();
    let vacuum = w.weight(0);
    let cos2_mean = (2.0 * (2.0 * theta).cos() * s2 + 2.0 * norm - vacuum) / 4.0;
    let cos_std = (cos2_mean - cos_mean * cos_mean).max(0.0).sqrt();

    Ok(PhaseExpectations {
        cos_mean,
        sin_mean,
        cos2_mean,
        cos_std,
    })
}
