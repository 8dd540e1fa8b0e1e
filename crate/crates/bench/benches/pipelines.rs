//! Criterion benchmarks for the near-linear pipelines and the determinant
//! oracle they are checked against.
//!
//! The chain-shaped inputs keep every counting factor small, so timings
//! track the structural passes; see the acceptance suite for the scaling
//! assertions these benchmarks visualize.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cliquecount::bench::{block_pipeline, ktree_pipeline};
use cliquecount::generators::{random_k_tree, GenSpec};
use cliquecount::graph::Graph;
use cliquecount::oracles::kirchhoff_count;

fn path_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::build(n, &edges).expect("path edges are simple")
}

fn bench_ktree_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("ktree_pipeline");
    for exp in [12u32, 14, 16] {
        let n = 1usize << exp;
        let (g, _) = random_k_tree(&GenSpec {
            seed: 42,
            n,
            k: 2,
            shape_bias: 0.0,
        })
        .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| ktree_pipeline(g))
        });
    }
    group.finish();
}

fn bench_block_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("block_pipeline");
    for exp in [12u32, 14, 16] {
        let n = 1usize << exp;
        let g = path_graph(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| block_pipeline(g))
        });
    }
    group.finish();
}

fn bench_kirchhoff(c: &mut Criterion) {
    let mut group = c.benchmark_group("kirchhoff_determinant");
    for n in [16usize, 32, 64] {
        let g = Graph::complete(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| kirchhoff_count(g).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_ktree_pipeline,
    bench_block_pipeline,
    bench_kirchhoff
);
criterion_main!(benches);
