use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use exact01_bench::fixture;
use exact01_core::bounds::{compute_upper_bound, pocket_perceptron, BoundConfig};
use exact01_core::{fit_hyperplane, solve, Sense};

fn solve_unpruned(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_unpruned");
    group.sample_size(10);
    for (d, n) in [(1, 500), (1, 1000), (2, 100), (2, 200)] {
        let ds = fixture(n, d);
        group.bench_with_input(BenchmarkId::new(format!("d{d}"), n), &ds, |b, ds| {
            b.iter(|| solve(black_box(ds), ds.n()).unwrap().optimal_loss)
        });
    }
    group.finish();
}

fn solve_pruned(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_auto_bound");
    group.sample_size(10);
    for (d, n) in [(2, 200), (3, 60)] {
        let ds = fixture(n, d);
        group.bench_with_input(BenchmarkId::new(format!("d{d}"), n), &ds, |b, ds| {
            b.iter(|| {
                let ub = compute_upper_bound(ds, &BoundConfig::default()).value;
                solve(black_box(ds), ub).unwrap().optimal_loss
            })
        });
    }
    group.finish();
}

fn hyperplane_fit(c: &mut Criterion) {
    let mut group = c.benchmark_group("fit_hyperplane");
    for d in [2, 4, 8] {
        let ds = fixture(d, d);
        let points: Vec<&[f64]> = ds.points().collect();
        group.bench_with_input(BenchmarkId::from_parameter(d), &points, |b, p| {
            b.iter(|| fit_hyperplane(black_box(p), Sense::Positive))
        });
    }
    group.finish();
}

fn pocket(c: &mut Criterion) {
    let ds = fixture(1000, 3);
    c.bench_function("pocket_perceptron_n1000_d3", |b| {
        b.iter(|| pocket_perceptron(black_box(&ds), 50, 0).value)
    });
}

criterion_group!(benches, solve_unpruned, solve_pruned, hyperplane_fit, pocket);
criterion_main!(benches);
