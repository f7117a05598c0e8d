//! Perturbative dark states of the lossless Λ system and the semiclassical
//! susceptibility that follows from them.
//!
//! The interaction Hamiltonian conserves `n1 + n2` and couples only the three
//! kets `|b, n1, n2>`, `|a, n1-1, n2>`, `|c, n1-1, n2+1>`, so everything here
//! lives in that block. Energies are in units of `hbar * gamma1`.

use crate::error::{check, EitError, Result};
use crate::params::SystemParams;

/// Fock-sector Rabi frequencies, `Omega1 = 2 g1 sqrt(n1)`,
/// `Omega2 = 2 g2 sqrt(n2 + 1)`.
///
/// Note the factor of two relative to the mean-field
/// [`SystemParams::omega2_bar`] used by the decaying-coherence modules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiTriple {
    pub omega1: f64,
    pub omega2: f64,
    pub omega: f64,
}

pub fn rabi(params: &SystemParams, n1: u64, n2: u64) -> RabiTriple {
    let omega1 = 2.0 * params.g1 * (n1 as f64).sqrt();
    let omega2 = 2.0 * params.g2 * (n2 as f64 + 1.0).sqrt();
    RabiTriple {
        omega1,
        omega2,
        omega: omega1.hypot(omega2),
    }
}

/// Perturbation order of the dark-state expansion in `delta1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

impl TryFrom<u8> for Order {
    type Error = EitError;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Order::First),
            2 => Ok(Order::Second),
            _ => Err(EitError::InvalidParameter {
                name: "order",
                value: v as f64,
                reason: "must be 1 or 2",
            }),
        }
    }
}

/// Amplitudes on `|b, n1, n2>`, `|a, n1-1, n2>`, `|c, n1-1, n2+1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarkState {
    pub order: Order,
    pub n1: u64,
    pub n2: u64,
    pub c_b: f64,
    pub c_a: f64,
    pub c_c: f64,
    /// Set when every Rabi frequency vanishes and the state falls back to
    /// `|b, n1, n2>`.
    pub degenerate: bool,
}

impl DarkState {
    pub fn norm_sqr(&self) -> f64 {
        self.c_b * self.c_b + self.c_a * self.c_a + self.c_c * self.c_c
    }

    /// Ground-state populations `(rho_bb, rho_cc)` at zeroth order,
    /// `Omega2^2/Omega^2` and `Omega1^2/Omega^2`.
    pub fn populations(params: &SystemParams, n1: u64, n2: u64) -> (f64, f64) {
        let r = rabi(params, n1, n2);
        if r.omega == 0.0 {
            return (1.0, 0.0);
        }
        let o2 = r.omega * r.omega;
        (r.omega2 * r.omega2 / o2, r.omega1 * r.omega1 / o2)
    }
}

/// Dark state to first or second order in `delta1`.
///
/// First order: `(Omega2/Omega, -2 Omega1 Omega2 delta1/Omega^3, -Omega1/Omega)`.
/// Second order adds `-4 Omega1^2 Omega2^3 delta1^2/Omega^7` to `c_b` and
/// `-4 Omega1 Omega2^4 delta1^2/Omega^7` to `c_c`. With `n1 = 0` the state is
/// `|b, 0, n2>` exactly.
pub fn dark_state(
    params: &SystemParams,
    n1: u64,
    n2: u64,
    delta1: f64,
    order: Order,
) -> Result<DarkState> {
    check(delta1.is_finite(), "delta1", delta1, "must be finite")?;
    let r = rabi(params, n1, n2);
    if r.omega == 0.0 {
        return Ok(DarkState {
            order,
            n1,
            n2,
            c_b: 1.0,
            c_a: 0.0,
            c_c: 0.0,
            degenerate: true,
        });
    }
    let (o1, o2, o) = (r.omega1, r.omega2, r.omega);
    let o3 = o * o * o;
    let mut c_b = o2 / o;
    let c_a = -2.0 * o1 * o2 * delta1 / o3;
    let mut c_c = -o1 / o;
    if order == Order::Second {
        let o7 = o3 * o3 * o;
        let d2 = delta1 * delta1;
        c_b -= 4.0 * o1 * o1 * o2.powi(3) * d2 / o7;
        c_c -= 4.0 * o1 * o2.powi(4) * d2 / o7;
    }
    Ok(DarkState {
        order,
        n1,
        n2,
        c_b,
        c_a,
        c_c,
        degenerate: false,
    })
}

/// `|| H1 psi - (Omega1^2/Omega^2) delta1 psi ||` in units of `hbar gamma1`.
///
/// `H1` restricted to the `(b, a, c)` block has `delta1` on the `a` and `c`
/// diagonals, `-g1 sqrt(n1)` between `a` and `b`, and `-g2 sqrt(n2 + 1)`
/// between `a` and `c`. The block is closed under `H1`.
pub fn apply_h1(params: &SystemParams, state: &DarkState, delta1: f64) -> f64 {
    let r = rabi(params, state.n1, state.n2);
    let eigen = if r.omega == 0.0 {
        0.0
    } else {
        r.omega1 * r.omega1 / (r.omega * r.omega) * delta1
    };
    let ab = -params.g1 * (state.n1 as f64).sqrt();
    let ac = -params.g2 * (state.n2 as f64 + 1.0).sqrt();
    let (b, a, c) = (state.c_b, state.c_a, state.c_c);

    let hb = ab * a;
    let ha = ab * b + delta1 * a + ac * c;
    let hc = ac * a + delta1 * c;
    let rb = hb - eigen * b;
    let ra = ha - eigen * a;
    let rc = hc - eigen * c;
    (rb * rb + ra * ra + rc * rc).sqrt()
}

/// Lossless susceptibility and its `omega1` slope for small `delta1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalChi {
    pub chi: f64,
    /// `d chi / d omega1 = -d chi / d delta1`.
    pub dchi_domega: f64,
}

/// Semiclassical-limit susceptibility from the second-order dark state,
/// `kappa gamma1 [-4 O2^2 d/S^2 + 16 O1^2 O2^4 d^3/S^5]` with `S = O1^2 + O2^2`.
pub fn semiclassical_chi(
    params: &SystemParams,
    omega1_bar: f64,
    omega2_bar: f64,
    delta1: f64,
) -> Result<SemiclassicalChi> {
    let s = omega1_bar * omega1_bar + omega2_bar * omega2_bar;
    if !s.is_finite() || s <= 0.0 {
        return Err(EitError::Degenerate);
    }
    let scale = params.kappa * params.gamma1;
    let o1sq = omega1_bar * omega1_bar;
    let o2sq = omega2_bar * omega2_bar;
    let s2 = s * s;
    let s5 = s2 * s2 * s;
    let d2 = delta1 * delta1;
    let chi = scale * (-4.0 * o2sq * delta1 / s2 + 16.0 * o1sq * o2sq * o2sq * delta1 * d2 / s5);
    let dchi_domega = scale * (4.0 * o2sq / s2 - 48.0 * o1sq * o2sq * o2sq * d2 / s5);
    Ok(SemiclassicalChi { chi, dchi_domega })
}

/// Positive detuning at which `d chi / d omega1` changes sign,
/// `sqrt(S^3 / (12 O1^2 O2^2))`. `None` if either Rabi frequency vanishes.
pub fn dispersion_turning_point(omega1_bar: f64, omega2_bar: f64) -> Option<f64> {
    let o1sq = omega1_bar * omega1_bar;
    let o2sq = omega2_bar * omega2_bar;
    if o1sq == 0.0 || o2sq == 0.0 {
        return None;
    }
    let s = o1sq + o2sq;
    Some((s * s * s / (12.0 * o1sq * o2sq)).sqrt())
}
