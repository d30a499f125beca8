use std::collections::BTreeMap;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hooksum_bench::{ranges, spread};
use hooksum_core::bijection::{unsort_full, DecoratedTree};
use hooksum_core::identities::{theta_product, theta_sum};
use hooksum_core::matrixtree::{build_kirchhoff, det_exact, principal_minor};
use hooksum_core::trees::enumerate_cayley;
use hooksum_core::RootedTree;

fn bench_theta(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    for a in ranges(&[4, 5, 6, 7]) {
        group.bench_with_input(BenchmarkId::new("sum", a.len()), &a, |b, a| {
            b.iter(|| theta_sum(black_box(a)))
        });
        group.bench_with_input(BenchmarkId::new("product", a.len()), &a, |b, a| {
            b.iter(|| theta_product(black_box(a)))
        });
    }
    group.finish();
}

fn bench_det(c: &mut Criterion) {
    let mut group = c.benchmark_group("kirchhoff_det");
    for n in [3, 4, 5, 6] {
        let minor = principal_minor(&build_kirchhoff(&spread(n, 2)).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &minor, |b, m| {
            b.iter(|| det_exact(black_box(m)))
        });
    }
    group.finish();
}

fn bench_cayley(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_cayley");
    group.sample_size(10);
    for a in ranges(&[6, 7]) {
        group.bench_with_input(BenchmarkId::from_parameter(a.len()), &a, |b, a| {
            b.iter(|| enumerate_cayley(black_box(a)).count())
        });
    }
    group.finish();
}

fn bench_unsort(c: &mut Criterion) {
    // path 1 - 2 - ... - 8, each vertex sent to the far leaf
    let edges: Vec<(u32, u32)> = (2..=8).map(|v| (v, v - 1)).collect();
    let tree = RootedTree::from_edges(&edges).unwrap();
    let phi: BTreeMap<u32, u32> = (2..=8).map(|v| (v, 8)).collect();
    let d = DecoratedTree::new(tree, phi).unwrap();
    c.bench_function("unsort_full_path8", |b| {
        b.iter(|| unsort_full(black_box(&d)))
    });
}

criterion_group!(benches, bench_theta, bench_det, bench_cayley, bench_unsort);
criterion_main!(benches);
