use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use varmin_core::certify::{certify, lookup};
use varmin_core::euler_lagrange::analyze_structure;
use varmin_core::fourier::{rayleigh_j, sign_pattern};
use varmin_core::isoperimetric::{perturb_project, shape_h};
use varmin_core::minimizer::{minimize_rayleigh, MinimizeOptions};
use varmin_core::{FourierSeries, PiecewiseSolution, MINIMUM_VALUE};

fn closed_form(modes: usize) -> FourierSeries {
    PiecewiseSolution::closed_form(MINIMUM_VALUE).fourier_series(modes).project_constraints()
}

fn rayleigh(c: &mut Criterion) {
    let mut group = c.benchmark_group("rayleigh_j");
    for modes in [64, 256, 1024] {
        let u = closed_form(modes);
        let grid = 8 * modes;
        group.bench_with_input(BenchmarkId::from_parameter(modes), &u, |b, u| {
            b.iter(|| rayleigh_j(black_box(u), grid).unwrap())
        });
    }
    group.finish();
}

fn nodal(c: &mut Criterion) {
    let u = closed_form(256);
    c.bench_function("sign_pattern/256", |b| b.iter(|| sign_pattern(black_box(&u), 2048).unwrap()));
    c.bench_function("analyze_structure/256", |b| b.iter(|| analyze_structure(black_box(&u), 2048).unwrap()));
}

fn minimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    group.sample_size(10);
    for modes in [32, 128] {
        let opts = MinimizeOptions { max_mode: modes, grid_size: 8 * modes, restarts: 2, ..MinimizeOptions::default() };
        group.bench_with_input(BenchmarkId::from_parameter(modes), &opts, |b, o| b.iter(|| minimize_rayleigh(o).unwrap()));
    }
    group.finish();
}

fn certify_1d(c: &mut Criterion) {
    let spec = lookup("h_quadratic_bound").unwrap();
    let mut group = c.benchmark_group("certify");
    group.sample_size(10);
    group.bench_function("h_quadratic_bound", |b| b.iter(|| certify(&spec, spec.default_step).unwrap()));
    group.finish();
}

fn shape(c: &mut Criterion) {
    let v = closed_form(256);
    let s = perturb_project(&v, 0.01, 4096).unwrap();
    c.bench_function("shape_h/4096", |b| b.iter(|| shape_h(black_box(&s)).unwrap()));
}

criterion_group!(benches, rayleigh, nodal, minimize, certify_1d, shape);
criterion_main!(benches);
