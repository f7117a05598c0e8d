use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eit_core::dynamics::{build_sector_default, dark_state_initial};
use eit_core::{
    chi_stats, evolve, poisson_weights, vg_stats, Case, CoherentPair, Order, SystemParams,
};

fn weights(c: &mut Criterion) {
    let mut group = c.benchmark_group("poisson_weights");
    for mean in [5.0, 500.0, 1e5] {
        group.bench_with_input(BenchmarkId::from_parameter(mean), &mean, |b, &m| {
            b.iter(|| poisson_weights(black_box(m), 1e-12).unwrap())
        });
    }
    group.finish();
}

fn susceptibility(c: &mut Criterion) {
    let p = SystemParams::default();
    let b_fields = CoherentPair::from_photon_numbers(500.0, 0.0, 0.0).unwrap();
    c.bench_function("chi_stats/b/500", |b| {
        b.iter(|| chi_stats(Case::B, &p, &b_fields, black_box(-0.1), 1e-12).unwrap())
    });
    // double sum over both modes
    let c_fields = CoherentPair::from_photon_numbers(100.0, 100.0, 0.0).unwrap();
    let pc = SystemParams { gamma2: 0.5, ..p };
    c.bench_function("chi_stats/c/100x100", |b| {
        b.iter(|| chi_stats(Case::C, &pc, &c_fields, black_box(-0.1), 1e-12).unwrap())
    });
}

fn dynamics(c: &mut Criterion) {
    let p = SystemParams {
        g1: 0.3,
        g2: 0.4,
        gamma2: 0.5,
        gamma3: 0.02,
        ..SystemParams::default()
    };
    let s = build_sector_default(&p, Case::C, 4, 3, 0.15).unwrap();
    let r0 = dark_state_initial(&p, 4, 3, 0.15, Order::Second).unwrap();
    c.bench_function("evolve/t=3", |b| {
        b.iter(|| evolve(&s.drift, &s.drive, &r0, black_box(3.0)).unwrap())
    });
}

fn group_velocity(c: &mut Criterion) {
    let p = SystemParams::default();
    c.bench_function("vg_stats/500", |b| {
        b.iter(|| vg_stats(&p, 500.0, black_box(0.16), 1e-12).unwrap())
    });
}

criterion_group!(benches, weights, susceptibility, dynamics, group_velocity);
criterion_main!(benches);
