use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use degree_lab::bins::{loads, throw};
use degree_lab::graph::split;
use degree_lab::nu::{nu, NuQuery, DEFAULT_TOL};
use degree_lab::pruefer::{decode, encode, sample_forest};
use degree_lab::samplers::{sample_cs, sample_gnm};

fn bench_nu(c: &mut Criterion) {
    c.bench_function("nu 1e9", |b| {
        let q = NuQuery::new(1e9, 1e9).unwrap();
        b.iter(|| nu(black_box(q), DEFAULT_TOL).unwrap())
    });
}

fn bench_bins(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_load");
    for n in [10_000usize, 100_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut seed = 0;
            b.iter(|| {
                seed += 1;
                loads(&throw(n, n, seed).unwrap()).max_load()
            })
        });
    }
    group.finish();
}

fn bench_pruefer(c: &mut Criterion) {
    let forest = sample_forest(100_000, 10, 7).unwrap();
    let seq = encode(&forest);
    c.bench_function("encode 1e5", |b| b.iter(|| encode(black_box(&forest))));
    c.bench_function("decode 1e5", |b| b.iter(|| decode(black_box(&seq))));
}

fn bench_graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("graphs");
    group.sample_size(20);
    group.bench_function("gnm 1e4 half", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            sample_gnm(10_000, 5_000, seed).unwrap()
        })
    });
    group.bench_function("cs 1e4 half", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            sample_cs(10_000, 5_000, seed).unwrap()
        })
    });
    let g = sample_gnm(100_000, 60_000, 3).unwrap().graph;
    group.bench_function("split 1e5", |b| b.iter(|| split(black_box(&g))));
    group.finish();
}

criterion_group!(benches, bench_nu, bench_bins, bench_pruefer, bench_graphs);
criterion_main!(benches);
