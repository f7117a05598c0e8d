//! Independent reference computations shared by the integration tests.
//!
//! Nothing in here calls into the code paths it is used to check: the ODE
//! oracle integrates `dR/dt = -M R + A` step by step, the Fock-space oracle
//! builds explicit truncated matrices from a recurrence for the coherent
//! amplitudes, and derivatives are central differences.

#![allow(dead_code)]

use eit_core::linalg::{CMat3, CVec3};
use eit_core::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^-mean mean^n / n!` by forward recurrence from `e^-mean`. Valid while
/// `e^-mean` is a normal double (mean below ~700).
pub fn poisson_pmf_recurrence(mean: f64, n: u64) -> f64 {
    let mut p = (-mean).exp();
    for k in 1..=n {
        p *= mean / k as f64;
    }
    p
}

/// Central difference with step `h`.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Adaptive Dormand–Prince 5(4) integration of `dR/dt = -M R + A` from 0 to
/// `t_end`.
pub fn integrate_linear_ode(m: &CMat3, a: &CVec3, r0: &CVec3, t_end: f64, tol: f64) -> CVec3 {
    let rhs = |y: &CVec3| -(m * y) + a;
    let a21 = 1.0 / 5.0;
    let (a31, a32) = (3.0 / 40.0, 9.0 / 40.0);
    let (a41, a42, a43) = (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0);
    let (a51, a52, a53, a54) = (
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
    );
    let (a61, a62, a63, a64, a65) = (
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    );
    let (b1, b3, b4, b5, b6) = (
        35.0 / 384.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    );
    let (e1, e3, e4, e5, e6, e7) = (
        71.0 / 57600.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    );
    let s = |x: f64| Complex64::new(x, 0.0);

    let mut t = 0.0;
    let mut y = *r0;
    let mut h = (t_end / 100.0).clamp(1e-6, 0.01);
    let mut k1 = rhs(&y);
    while t < t_end {
        if t + h > t_end {
            h = t_end - t;
        }
        let k2 = rhs(&(y + k1 * s(h * a21)));
        let k3 = rhs(&(y + (k1 * s(a31) + k2 * s(a32)) * s(h)));
        let k4 = rhs(&(y + (k1 * s(a41) + k2 * s(a42) + k3 * s(a43)) * s(h)));
        let k5 = rhs(&(y + (k1 * s(a51) + k2 * s(a52) + k3 * s(a53) + k4 * s(a54)) * s(h)));
        let k6 = rhs(
            &(y + (k1 * s(a61) + k2 * s(a62) + k3 * s(a63) + k4 * s(a64) + k5 * s(a65)) * s(h))
        );
        let y_new = y + (k1 * s(b1) + k3 * s(b3) + k4 * s(b4) + k5 * s(b5) + k6 * s(b6)) * s(h);
        let k7 = rhs(&y_new);
        let err = ((k1 * s(e1) + k3 * s(e3) + k4 * s(e4) + k5 * s(e5) + k6 * s(e6) + k7 * s(e7))
            * s(h))
        .norm();
        let scale = tol * (1.0 + y.norm().max(y_new.norm()));
        if err <= scale {
            t += h;
            y = y_new;
            k1 = k7;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * (scale / err).powf(0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    y
}

/// Dense square matrix for brute-force Fock-space checks.
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![c(0.0, 0.0); n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let mut out = Dense::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..self.n {
                    out.data[i * self.n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        Dense {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Dense) -> Dense {
        Dense {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Dense {
        Dense {
            n: self.n,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn expect(&self, psi: &[Complex64]) -> Complex64 {
        let mut acc = c(0.0, 0.0);
        for i in 0..self.n {
            for j in 0..self.n {
                acc += psi[i].conj() * self.get(i, j) * psi[j];
            }
        }
        acc
    }
}

/// Truncated Susskind–Glogower and number operators at cutoff `n_c`
/// (basis `|0> .. |n_c - 1>`): returns `(n, cos, sin)`.
pub fn sg_operators(n_c: usize) -> (Dense, Dense, Dense) {
    let mut lower = Dense::zeros(n_c);
    let mut number = Dense::zeros(n_c);
    for k in 0..n_c {
        number.set(k, k, c(k as f64, 0.0));
        if k + 1 < n_c {
            lower.set(k, k + 1, c(1.0, 0.0));
        }
    }
    let mut raise = Dense::zeros(n_c);
    for i in 0..n_c {
        for j in 0..n_c {
            raise.set(i, j, lower.get(j, i).conj());
        }
    }
    let cos = lower.add(&raise).scale(c(0.5, 0.0));
    let sin = lower.sub(&raise).scale(c(0.0, -0.5));
    (number, cos, sin)
}

/// Coherent-state amplitudes `e^{-|a|^2/2} a^n / sqrt(n!)` by recurrence.
pub fn coherent_amplitudes(alpha: Complex64, n_c: usize) -> Vec<Complex64> {
    let mut psi = Vec::with_capacity(n_c);
    let mut amp = c((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for k in 0..n_c {
        psi.push(amp);
        amp = amp * alpha / ((k + 1) as f64).sqrt();
    }
    psi
}

/// Brute-force `(<cos>, <sin>, <cos^2>)` at cutoff `n_c`.
pub fn brute_force_phase(alpha: Complex64, n_c: usize) -> (f64, f64, f64) {
    let (_, cos, sin) = sg_operators(n_c);
    let psi = coherent_amplitudes(alpha, n_c);
    let cos2 = cos.mul(&cos);
    (
        cos.expect(&psi).re,
        sin.expect(&psi).re,
        cos2.expect(&psi).re,
    )
}

/// Frobenius norm of `[n, cos] + i sin` restricted to rows and columns
/// below `limit`.
pub fn commutator_defect(n_c: usize, limit: usize) -> f64 {
    let (number, cos, sin) = sg_operators(n_c);
    let comm = number.mul(&cos).sub(&cos.mul(&number));
    let defect = comm.add(&sin.scale(c(0.0, 1.0)));
    let mut acc = 0.0;
    for i in 0..limit {
        for j in 0..limit {
            acc += defect.get(i, j).norm_sqr();
        }
    }
    acc.sqrt()
}
