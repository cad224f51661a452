use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minmax_core::{build_minmax, census_exact, psi, random_permutation, TreeBuilder, Variant};
use std::hint::black_box;

fn builders(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for n in [10, 100, 1000] {
        let p = random_permutation(n, 42, 0);
        group.bench_with_input(BenchmarkId::new("reference", n), &p, |b, p| {
            b.iter(|| build_minmax(black_box(p)))
        });
        let mut builder = TreeBuilder::new(Variant::MinMax);
        let mut tree = builder.build(&p);
        group.bench_with_input(BenchmarkId::new("sparse_table", n), &p, |b, p| {
            b.iter(|| builder.build_into(black_box(p), &mut tree))
        });
    }
    group.finish();
}

fn operator(c: &mut Criterion) {
    let p = random_permutation(200, 7, 0);
    let t = build_minmax(&p);
    let i = t.root();
    c.bench_function("psi_root_n200", |b| b.iter(|| psi(black_box(&p), i)));
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for workers in [1, 4] {
        group.bench_with_input(BenchmarkId::new("n8", workers), &workers, |b, &w| {
            b.iter(|| census_exact(8, Variant::MinMax, w).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, builders, operator, census);
criterion_main!(benches);
