use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use csgreen_core::verify::{run_all, SuiteOptions};
use csgreen_core::{
    line_couple_kernels_2d, line_force_kernels_2d, point_couple_kernels_3d, point_force_kernels_3d, EvalPoint2,
    EvalPoint3, MaterialParams,
};

fn kernels(c: &mut Criterion) {
    let p = MaterialParams::default();
    let x3 = EvalPoint3::new([0.07, -0.05, 0.11]).unwrap();
    let x2 = EvalPoint2::new([0.07, -0.05]).unwrap();
    c.bench_function("point_force_kernels_3d", |b| b.iter(|| point_force_kernels_3d(&p, black_box(&x3))));
    c.bench_function("point_couple_kernels_3d", |b| b.iter(|| point_couple_kernels_3d(&p, black_box(&x3))));
    c.bench_function("line_force_kernels_2d", |b| b.iter(|| line_force_kernels_2d(&p, black_box(&x2))));
    c.bench_function("line_couple_kernels_2d", |b| b.iter(|| line_couple_kernels_2d(&p, black_box(&x2))));
}

fn grid(c: &mut Criterion) {
    let p = MaterialParams::default();
    let pts: Vec<EvalPoint2> = (0..21 * 21)
        .filter_map(|k| EvalPoint2::new([-1.0 + 0.1 * (k % 21) as f64, -1.0 + 0.1 * (k / 21) as f64]).ok())
        .collect();
    c.bench_function("line_force_grid_21x21", |b| {
        b.iter(|| pts.iter().filter_map(|x| line_force_kernels_2d(&p, x).ok()).count())
    });
}

fn suite(c: &mut Criterion) {
    let opts = SuiteOptions::for_material(MaterialParams::default(), 42);
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("run_all_default_material", |b| b.iter(|| run_all(black_box(&opts)).unwrap()));
    g.finish();
}

criterion_group!(benches, kernels, grid, suite);
criterion_main!(benches);
