mod common;

use common::central_diff;
use eit_core::dark_state::{
    apply_h1, dark_state, dispersion_turning_point, rabi, semiclassical_chi, Order,
};
use eit_core::SystemParams;

fn unit() -> SystemParams {
    SystemParams {
        g1: 1.0,
        g2: 1.0,
        ..SystemParams::default()
    }
}

// 40-digit evaluation of the three second-order closed forms at
// g1 = g2 = 1, n1 = 4, n2 = 3, delta1 = 0.1.
#[allow(clippy::excessive_precision)]
const ORDER2_REF: (f64, f64, f64) = (
    0.706_885_810_317_426_728_3,
    -0.017_677_669_529_663_688_11,
    -0.707_327_752_055_668_320_5,
);

#[test]
fn second_order_amplitudes_by_direct_substitution() {
    let s = dark_state(&unit(), 4, 3, 0.1, Order::Second).unwrap();
    assert!((s.c_b - ORDER2_REF.0).abs() < 1e-15);
    assert!((s.c_a - ORDER2_REF.1).abs() < 1e-15);
    assert!((s.c_c - ORDER2_REF.2).abs() < 1e-15);
}

fn slope(order: Order, n1: u64, n2: u64) -> f64 {
    let p = unit();
    let omega = rabi(&p, n1, n2).omega;
    let pts: Vec<(f64, f64)> = (0..=8)
        .map(|k| {
            let d = omega * 10f64.powf(-3.0 + 2.0 * k as f64 / 8.0);
            let s = dark_state(&p, n1, n2, d, order).unwrap();
            (d.ln(), apply_h1(&p, &s, d).ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn residual_scaling() {
    for (n1, n2) in [(4, 3), (1, 0), (20, 7)] {
        let s1 = slope(Order::First, n1, n2);
        let s2 = slope(Order::Second, n1, n2);
        assert!((s1 - 2.0).abs() <= 0.1, "order 1 slope {s1}");
        assert!((s2 - 3.0).abs() <= 0.1, "order 2 slope {s2}");
    }
}

#[test]
fn first_order_norm_defect_is_quadratic() {
    let p = unit();
    let omega = rabi(&p, 4, 3).omega;
    for d in [1e-3, 1e-2] {
        let s = dark_state(&p, 4, 3, d * omega, Order::First).unwrap();
        let defect = (s.norm_sqr() - 1.0).abs();
        // |c_a|^2 = 4 O1^2 O2^2 d^2 / O^6
        assert!((defect - s.c_a * s.c_a).abs() < 1e-15);
    }
}

#[test]
fn semiclassical_symmetry_and_slope() {
    let p = SystemParams::default();
    for (o1, o2) in [(0.3, 0.5), (1.0, 0.2), (0.05, 2.0)] {
        for d in [0.01, 0.05, 0.2] {
            let plus = semiclassical_chi(&p, o1, o2, d).unwrap();
            let minus = semiclassical_chi(&p, o1, o2, -d).unwrap();
            assert!((plus.chi + minus.chi).abs() <= 1e-14);
            assert!((plus.dchi_domega - minus.dchi_domega).abs() <= 1e-14);
            let fd = -central_diff(|x| semiclassical_chi(&p, o1, o2, x).unwrap().chi, d, 1e-5);
            assert!((fd - plus.dchi_domega).abs() <= 1e-7 * (1.0 + fd.abs()));
        }
    }
}

#[test]
fn dispersion_turning_point_by_bisection() {
    let p = SystemParams::default();
    let (o1, o2) = (0.4, 0.5);
    let target = dispersion_turning_point(o1, o2).unwrap();
    let f = |d: f64| semiclassical_chi(&p, o1, o2, d).unwrap().dchi_domega;
    let (mut lo, mut hi) = (0.0, 10.0 * target);
    assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    assert!((0.5 * (lo + hi) - target).abs() <= 1e-9);
}
