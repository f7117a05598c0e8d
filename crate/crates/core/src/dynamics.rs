//! Coherence dynamics on a single Fock sector.
//!
//! With the populations frozen at their initial values, the three
//! coherences `R = (rho_ab, rho_cb, rho_ca)` obey `dR/dt = -M R + A`. On a
//! sector `(n1, n2)` the field operators in `M` become the scalars
//! `g1 sqrt(n1)` and `g2 sqrt(n2 + 1)`, the propagation phases are taken at
//! `z = 0`, and the field amplitudes in `A` are normalized to one.

use num_complex::Complex64;

use crate::dark_state::{dark_state, DarkState, Order};
use crate::error::{check, EitError, Result};
use crate::linalg::{cond1, expm_neg, CMat3, CVec3, ExpmRoute, Lu3};
use crate::params::{Case, SystemParams};

/// Condition number above which a drift matrix is treated as singular.
pub const SINGULAR_COND: f64 = 1e12;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceVector {
    pub rho_ab: Complex64,
    pub rho_cb: Complex64,
    pub rho_ca: Complex64,
}

impl CoherenceVector {
    pub fn zero() -> Self {
        Self::from_vector(&CVec3::zeros())
    }

    pub fn to_vector(&self) -> CVec3 {
        CVec3::new(self.rho_ab, self.rho_cb, self.rho_ca)
    }

    pub fn from_vector(v: &CVec3) -> Self {
        Self {
            rho_ab: v[0],
            rho_cb: v[1],
            rho_ca: v[2],
        }
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.to_vector() - other.to_vector()).norm()
    }

    /// True when every coherence has modulus at most one.
    pub fn is_physical(&self) -> bool {
        [self.rho_ab, self.rho_cb, self.rho_ca]
            .iter()
            .all(|z| z.norm() <= 1.0 + 1e-12)
    }

    /// Coherences of a pure dark state in the `(b, a, c)` block:
    /// `rho_ab = c_a c_b`, `rho_cb = c_c c_b`, `rho_ca = c_c c_a`.
    pub fn from_dark_state(state: &DarkState) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        Self {
            rho_ab: c(state.c_a * state.c_b),
            rho_cb: c(state.c_c * state.c_b),
            rho_ca: c(state.c_c * state.c_a),
        }
    }
}

/// The 3x3 drift matrix of one Fock sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix {
    pub entries: CMat3,
    pub n1: u64,
    pub n2: u64,
}

impl DriftMatrix {
    /// Wraps an arbitrary matrix; the sector labels are only used in error
    /// messages.
    pub fn from_matrix(entries: CMat3) -> Self {
        Self {
            entries,
            n1: 0,
            n2: 0,
        }
    }

    pub fn eigenvalues(&self) -> [Complex64; 3] {
        crate::linalg::eigenvalues(&self.entries)
    }

    /// Smallest real part of the spectrum (the slowest relaxation rate).
    pub fn slowest_rate(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min)
    }

    fn singular(&self, what: impl Into<String>) -> EitError {
        EitError::Singular {
            n1: self.n1,
            n2: self.n2,
            what: what.into(),
        }
    }
}

/// Source term `A = (a1, 0, a3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveVector {
    pub a1: Complex64,
    pub a3: Complex64,
}

impl DriveVector {
    pub fn to_vector(&self) -> CVec3 {
        CVec3::new(self.a1, ZERO, self.a3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub drift: DriftMatrix,
    pub drive: DriveVector,
}

/// Default frozen populations `(rho_bb, rho_cc)` for a case: everything in
/// `|b>` for case (a), dark-state weights otherwise.
pub fn default_populations(params: &SystemParams, case: Case, n1: u64, n2: u64) -> (f64, f64) {
    match case {
        Case::A => (1.0, 0.0),
        Case::B | Case::C => DarkState::populations(params, n1, n2),
    }
}

/// Drift matrix and drive for sector `(n1, n2)`.
///
/// Case (a) drops the probe couplings from `M` and forces `rho_bb = 1`,
/// `rho_cc = 0`; the supplied populations are ignored. Cases (b) and (c)
/// use the full matrix with the given populations (see
/// [`default_populations`]).
pub fn build_sector(
    params: &SystemParams,
    case: Case,
    n1: u64,
    n2: u64,
    delta1: f64,
    rho_bb0: f64,
    rho_cc0: f64,
) -> Result<Sector> {
    params.validate()?;
    check(delta1.is_finite(), "delta1", delta1, "must be finite")?;
    let (rho_bb0, rho_cc0) = match case {
        Case::A => (1.0, 0.0),
        Case::B | Case::C => {
            check(rho_bb0 >= 0.0, "rho_bb0", rho_bb0, "must be >= 0")?;
            check(rho_cc0 >= 0.0, "rho_cc0", rho_cc0, "must be >= 0")?;
            check(
                rho_bb0 + rho_cc0 <= 1.0 + 1e-12,
                "rho_bb0 + rho_cc0",
                rho_bb0 + rho_cc0,
                "must be <= 1",
            )?;
            (rho_bb0, rho_cc0)
        }
    };

    let c = |x: f64| Complex64::new(x, 0.0);
    let coupling = c(params.g2 * (n2 as f64 + 1.0).sqrt());
    let probe = match case {
        Case::A => ZERO,
        Case::B | Case::C => c(params.g1 * (n1 as f64).sqrt()),
    };
    let entries = CMat3::new(
        Complex64::new(params.gamma1, delta1),
        -I * coupling,
        ZERO,
        -I * coupling,
        Complex64::new(params.gamma3, delta1),
        I * probe,
        ZERO,
        I * probe,
        c(params.gamma2),
    );
    Ok(Sector {
        drift: DriftMatrix { entries, n1, n2 },
        drive: DriveVector {
            a1: I * (rho_bb0 / 2.0),
            a3: I * (rho_cc0 / 2.0),
        },
    })
}

/// Sector with the case's default populations.
pub fn build_sector_default(
    params: &SystemParams,
    case: Case,
    n1: u64,
    n2: u64,
    delta1: f64,
) -> Result<Sector> {
    let (bb, cc) = default_populations(params, case, n1, n2);
    build_sector(params, case, n1, n2, delta1, bb, cc)
}

/// Steady state `R = M^-1 A`.
pub fn steady_state(m: &DriftMatrix, a: &DriveVector) -> Result<CoherenceVector> {
    let cond = cond1(&m.entries);
    if cond.is_nan() || cond > SINGULAR_COND {
        return Err(m.singular(format!("drift matrix condition number {cond:e}")));
    }
    let lu = Lu3::new(&m.entries).ok_or_else(|| m.singular("zero pivot"))?;
    Ok(CoherenceVector::from_vector(&lu.solve(&a.to_vector())))
}

/// Transient solution `R(t) = e^{-Mt} R0 + (1 - e^{-Mt}) M^-1 A`.
///
/// `t = 0` returns `R0` unchanged and `t = +inf` returns the steady state.
pub fn evolve(
    m: &DriftMatrix,
    a: &DriveVector,
    r0: &CoherenceVector,
    t: f64,
) -> Result<CoherenceVector> {
    evolve_with_route(m, a, r0, t).map(|(r, _)| r)
}

/// [`evolve`], also reporting which exponential route was taken.
pub fn evolve_with_route(
    m: &DriftMatrix,
    a: &DriveVector,
    r0: &CoherenceVector,
    t: f64,
) -> Result<(CoherenceVector, Option<ExpmRoute>)> {
    check(t >= 0.0, "t", t, "must be >= 0")?;
    if t == 0.0 {
        return Ok((*r0, None));
    }
    let steady = steady_state(m, a)?;
    if t.is_infinite() {
        return Ok((steady, None));
    }
    let (propagator, route) = expm_neg(&m.entries, t);
    let rss = steady.to_vector();
    let r = rss + propagator * (r0.to_vector() - rss);
    Ok((CoherenceVector::from_vector(&r), Some(route)))
}

/// Dark-state coherences used as the transient initial condition.
pub fn dark_state_initial(
    params: &SystemParams,
    n1: u64,
    n2: u64,
    delta1: f64,
    order: Order,
) -> Result<CoherenceVector> {
    Ok(CoherenceVector::from_dark_state(&dark_state(
        params, n1, n2, delta1, order,
    )?))
}
