use bandgap_resonance_core::band::{BandStructure, CrystalSpec};
use bandgap_resonance_core::forces::force_result;
use bandgap_resonance_core::resolvent::{
    integral_i3, AtomPairConfig, Dimensionality, IntegralMethod,
};
use bandgap_resonance_core::sweep;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bands() -> BandStructure {
    BandStructure::compute(&CrystalSpec::new(2.0, 1e-7).unwrap(), 1).unwrap()
}

fn cfg(b: &BandStructure, r: f64) -> AtomPairConfig {
    AtomPairConfig::new(
        b.omega_c * (1.0 + 1e-4),
        1e10,
        r,
        1.0,
        [0.0, 0.0, 1.0],
        Dimensionality::ThreeD,
    )
    .unwrap()
}

/// Closed-form force assembly over a separation grid: cheap per point,
/// measures sweep overhead.
fn bench_force_sweep(c: &mut Criterion) {
    let b = bands();
    let grid = sweep::grid(20.0 / b.k0, 2000.0 / b.k0, 4096, sweep::Spacing::Linear).unwrap();
    let point = |r: f64| {
        let cfg = cfg(&b, r);
        let f3 = force_result(&cfg, &b, Dimensionality::ThreeD, true).unwrap();
        let f1 = force_result(&cfg, &b, Dimensionality::OneD, true).unwrap();
        f3.force + f1.force
    };
    let mut group = c.benchmark_group("force_sweep");
    group.bench_function("serial", |bch| {
        bch.iter(|| black_box(sweep::run_serial(black_box(&grid), point)))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |bch| {
        bch.iter(|| black_box(sweep::run_parallel(black_box(&grid), point)))
    });
    group.finish();
}

/// Principal-value quadrature over a separation grid: the expensive
/// kernel, where the parallel path pays off.
fn bench_integral_sweep(c: &mut Criterion) {
    let b = bands();
    let zeta = b.omega_c * (1.0 + 1e-4);
    let grid = sweep::grid(20.0 / b.k0, 100.0 / b.k0, 32, sweep::Spacing::Linear).unwrap();
    let point = |r: f64| integral_i3(zeta, r, &b, IntegralMethod::Quadrature).unwrap().value;
    let mut group = c.benchmark_group("integral_sweep");
    group.sample_size(10);
    group.bench_function("serial", |bch| {
        bch.iter(|| black_box(sweep::run_serial(black_box(&grid), point)))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |bch| {
        bch.iter(|| black_box(sweep::run_parallel(black_box(&grid), point)))
    });
    group.finish();
}

criterion_group!(benches, bench_force_sweep, bench_integral_sweep);
criterion_main!(benches);
