use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use memf::functions::{Gaussian, Separable2D};
use memf::memf1d::{memf_sum_infinite, CutParams, SmoothFunction1D};
use memf::memf2d::{memf_sum_region, CutParams2D, GridRegion, SmoothFunction2D};
use memf::oracle::{direct_sum_1d_infinite, direct_sum_2d};
use memf::partition::{rotator_partition, well1d_partition, well2d_partition};
use memf::sweep::{oracle_value, System};

fn well1d(c: &mut Criterion) {
    let mut g = c.benchmark_group("well1d");
    for b in [1e-2, 1e-4] {
        let cut = CutParams::new(1, 5, 2).unwrap();
        g.bench_with_input(BenchmarkId::new("memf", b), &b, |bch, &b| {
            bch.iter(|| well1d_partition(black_box(b), cut).unwrap().value)
        });
        g.bench_with_input(BenchmarkId::new("oracle", b), &b, |bch, &b| {
            bch.iter(|| oracle_value(System::Well1D, black_box(b)).unwrap())
        });
    }
    g.finish();
}

fn rotator(c: &mut Criterion) {
    let mut g = c.benchmark_group("rotator");
    let b = 1e-3;
    let cut = CutParams::new(1, 5, 2).unwrap();
    g.bench_function("memf", |bch| {
        bch.iter(|| rotator_partition(black_box(b), cut).unwrap().value)
    });
    g.bench_function("oracle", |bch| {
        bch.iter(|| oracle_value(System::Rotator, black_box(b)).unwrap())
    });
    g.finish();
}

fn well2d(c: &mut Criterion) {
    let mut g = c.benchmark_group("well2d");
    g.sample_size(10);
    let b = 1e-2;
    g.bench_function("memf", |bch| {
        bch.iter(|| well2d_partition(black_box(b), 1, 5, 2).unwrap().value)
    });
    g.bench_function("oracle", |bch| {
        bch.iter(|| oracle_value(System::Well2D, black_box(b)).unwrap())
    });
    g.finish();
}

fn generic_gaussian(c: &mut Criterion) {
    let mut g = c.benchmark_group("gaussian");
    g.sample_size(10);
    let f = Gaussian::new(1e-3).unwrap();
    let cut = CutParams::new(0, 4, 1).unwrap();
    g.bench_function("memf_1d", |bch| {
        bch.iter(|| memf_sum_infinite(&f, 0, cut).unwrap().total)
    });
    g.bench_function("oracle_1d", |bch| {
        let h = |i: i64| f.value(i as f64);
        bch.iter(|| direct_sum_1d_infinite(h, 0, h).unwrap().value)
    });

    let f2 = Separable2D::new(Gaussian::new(0.05).unwrap(), Gaussian::new(0.05).unwrap());
    let region = GridRegion::rectangle(-30, 31, -30, 31);
    let cut2 = CutParams2D::symmetric(3, 1).unwrap();
    g.bench_function("memf_2d_block", |bch| {
        bch.iter(|| memf_sum_region(&f2, &region, &cut2).unwrap().total)
    });
    g.bench_function("oracle_2d_block", |bch| {
        bch.iter(|| direct_sum_2d(|i, j| f2.value(i as f64, j as f64), region.squares()))
    });
    g.finish();
}

criterion_group!(benches, well1d, rotator, well2d, generic_gaussian);
criterion_main!(benches);
