use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use csgreen_core::specfun::{
    bessel_k0, bessel_k1, bracket_g1, bracket_g2, bracket_h2, bracket_h4, DimensionlessArg,
};

fn bessel(c: &mut Criterion) {
    let mut g = c.benchmark_group("bessel");
    for x in [0.01, 1.5, 2.5, 40.0] {
        let a = DimensionlessArg::new(x).unwrap();
        g.bench_with_input(BenchmarkId::new("k0", x), &a, |b, a| b.iter(|| bessel_k0(black_box(*a))));
        g.bench_with_input(BenchmarkId::new("k1", x), &a, |b, a| b.iter(|| bessel_k1(black_box(*a))));
    }
    g.finish();
}

fn brackets(c: &mut Criterion) {
    let mut g = c.benchmark_group("brackets");
    for x in [0.03, 0.2, 3.0] {
        let a = DimensionlessArg::new(x).unwrap();
        g.bench_with_input(BenchmarkId::new("g1", x), &a, |b, a| b.iter(|| bracket_g1(black_box(*a))));
        g.bench_with_input(BenchmarkId::new("g2", x), &a, |b, a| b.iter(|| bracket_g2(black_box(*a))));
        g.bench_with_input(BenchmarkId::new("h2", x), &x, |b, x| b.iter(|| bracket_h2(black_box(*x))));
        g.bench_with_input(BenchmarkId::new("h4", x), &x, |b, x| b.iter(|| bracket_h4(black_box(*x))));
    }
    g.finish();
}

criterion_group!(benches, bessel, brackets);
criterion_main!(benches);
