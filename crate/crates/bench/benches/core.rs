use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use inose_core::arith::{pow_p, rat};
use inose_core::padic::rational_cubic;
use inose_core::*;

fn cubics(c: &mut Criterion) {
    let mut g = c.benchmark_group("cubic_ramification");
    let k = LocalField::rational(5).unwrap();
    // Unramified, Eisenstein-like, and a cubic whose slopes need a deep Newton polygon.
    let cases = [
        ("split", rational_cubic(&rat(-6), &rat(11), &rat(-6))),
        ("eisenstein", rational_cubic(&rat(-5), &rat(0), &rat(0))),
        ("deep", rational_cubic(&pow_p(5, 7), &(rat(3) * pow_p(5, 4)), &rat(0))),
    ];
    for (name, f) in &cases {
        g.bench_with_input(BenchmarkId::from_parameter(name), f, |b, f| {
            b.iter(|| splitting_ramification_cubic(&k, black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn reductions(c: &mut Criterion) {
    let e = WeierstrassCurve::over_qp(7, rat(-3) * pow_p(7, 6), rat(3) * pow_p(7, 9)).unwrap();
    c.bench_function("reduction_type", |b| b.iter(|| reduction_type(black_box(&e)).unwrap()));
    let c2 = WeierstrassCurve::over_qp(7, rat(49), rat(343)).unwrap();
    c.bench_function("kummer_reduction_decision", |b| {
        b.iter(|| kummer_reduction_decision(black_box(&e), black_box(&c2)).unwrap())
    });
}

fn pencils(c: &mut Criterion) {
    let mut g = c.benchmark_group("euler_sum");
    for (a, bm1, b0, b1) in [(0, 1, 0, 1), (2, 3, 5, 7), (-3, 1, 0, 1)] {
        let si = SIPencil::from_ints(a, bm1, b0, b1).unwrap();
        let y = si.homogenize();
        g.bench_with_input(BenchmarkId::new("si", format!("{a},{bm1},{b0},{b1}")), &y, |b, y| {
            b.iter(|| euler_sum(black_box(y)).unwrap())
        });
        let u = kummer_transform(&si).unwrap().u_pencil;
        g.bench_with_input(BenchmarkId::new("u", format!("{a},{bm1},{b0},{b1}")), &u, |b, u| {
            b.iter(|| euler_sum(black_box(u)).unwrap())
        });
    }
    g.finish();
}

fn verdicts(c: &mut Criterion) {
    let policy = PrecisionPolicy::default();
    let mut g = c.benchmark_group("si_verdict");
    g.sample_size(20);
    for (name, si) in [
        ("f1", SIPencil::from_ints(0, 1, 0, 1).unwrap()),
        ("f6", SIPencil::from_ints(0, 5, 0, 1).unwrap()),
        ("conjugate_j", SIPencil::from_ints(-3, 1, 2, 1).unwrap()),
    ] {
        g.bench_with_input(BenchmarkId::from_parameter(name), &si, |b, si| {
            b.iter(|| si_verdict(black_box(si), 5, &policy).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, cubics, reductions, pencils, verdicts);
criterion_main!(benches);
