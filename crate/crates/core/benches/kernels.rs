//! Sequential (one-thread pool) against parallel (default pool) for the
//! data-parallel kernels.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperinv::constructions::{cover_to_critical, lower_bound_cover};
use hyperinv::cover::is_minimal_edge_cover;
use hyperinv::invertibility::{is_invertibility_critical, is_invertible};
use hyperinv::search::{search_b, search_c, search_i, SearchConfig};
use hyperinv::{CoverFamily, HostGraph, Hypergraph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pools() -> Vec<(&'static str, ThreadPool)> {
    vec![
        (
            "sequential",
            ThreadPoolBuilder::new().num_threads(1).build().unwrap(),
        ),
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn random_hypergraphs(count: usize, n: usize, edges: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let es: Vec<VertexSet> = (0..edges)
                .map(|_| {
                    let mut e: VertexSet = (0..n).filter(|_| rng.random_bool(0.2)).collect();
                    e.insert(rng.random_range(0..n));
                    e
                })
                .collect();
            Hypergraph::new((0..n).map(|i| format!("v{i}")).collect(), es).unwrap()
        })
        .collect()
}

fn all_pairs(n: usize) -> CoverFamily {
    let members = (0..n).flat_map(|x| (x + 1..n).map(move |y| VertexSet::from([x, y])));
    CoverFamily::new(
        (0..n).map(|i| format!("k{i}")).collect(),
        HostGraph::Complete { order: n },
        members,
    )
    .unwrap()
}

fn kernels(c: &mut Criterion) {
    let batch = random_hypergraphs(64, 60, 40);
    let critical = cover_to_critical(&all_pairs(24)).unwrap();
    let big_cover = lower_bound_cover(9).unwrap();

    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("invertibility_batch", name), |b| {
            b.iter(|| pool.install(|| batch.iter().filter(|h| is_invertible(black_box(h))).count()))
        });
        group.bench_function(BenchmarkId::new("criticality_k24", name), |b| {
            b.iter(|| pool.install(|| is_invertibility_critical(black_box(&critical))))
        });
        group.bench_function(BenchmarkId::new("minimal_cover_h9", name), |b| {
            b.iter(|| pool.install(|| is_minimal_edge_cover(black_box(&big_cover))))
        });
    }
    group.finish();
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("b_d2", name), |b| {
            b.iter(|| pool.install(|| search_b(2, &SearchConfig::with_caps(4, 10)).unwrap().best))
        });
        group.bench_function(BenchmarkId::new("c_d2", name), |b| {
            b.iter(|| pool.install(|| search_c(2, &SearchConfig::default()).unwrap().best))
        });
        group.bench_function(BenchmarkId::new("i_d2", name), |b| {
            b.iter(|| pool.install(|| search_i(2, &SearchConfig::with_caps(4, 9)).unwrap().best))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels, searches);
criterion_main!(benches);
