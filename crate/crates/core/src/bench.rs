//! Self-contained scaling harness for the two near-linear pipelines:
//! chordal analysis plus clique-tree counting on k-trees, and block
//! decomposition plus spanning-tree counting on block graphs.
//!
//! Inputs are chain-shaped so every counting factor is trivial; the
//! measured time then reflects the structural passes rather than
//! big-integer growth, and doubling the size should roughly double the
//! wall time.  Each point reports the minimum over a few repetitions plus
//! the big-integer multiplication count of the counting stage.

use std::time::Instant;

use crate::chordal::analyze;
use crate::counting::{count_clique_trees_ktree_counted, count_spanning_trees_block_counted};
use crate::generators::{random_k_tree, GenSpec};
use crate::graph::{BigCount, Graph};
use crate::recognition::recognize_block_graph;

/// One ladder size: wall seconds (minimum over repetitions) and the
/// multiplication count of the final run, per pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchPoint {
    pub n: usize,
    pub ktree_secs: f64,
    pub ktree_multiplications: u64,
    pub block_secs: f64,
    pub block_multiplications: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub points: Vec<BenchPoint>,
}

impl BenchReport {
    /// Wall-time ratios between consecutive ladder points for the k-tree
    /// pipeline.
    pub fn ktree_ratios(&self) -> Vec<f64> {
        self.points
            .windows(2)
            .map(|w| w[1].ktree_secs / w[0].ktree_secs)
            .collect()
    }

    pub fn block_ratios(&self) -> Vec<f64> {
        self.points
            .windows(2)
            .map(|w| w[1].block_secs / w[0].block_secs)
            .collect()
    }
}

/// Full k-tree pipeline on a prepared graph: analysis, then the
/// multiplicity-product count.  Returns the count and the number of
/// big-integer multiplications spent on it.
pub fn ktree_pipeline(g: &Graph) -> (BigCount, u64) {
    let analysis = analyze(g).expect("ladder inputs are connected chordal graphs");
    count_clique_trees_ktree_counted(&analysis.table)
}

/// Full block pipeline: decomposition, then the block-size product.
pub fn block_pipeline(g: &Graph) -> (BigCount, u64) {
    let decomposition = recognize_block_graph(g).expect("ladder inputs are block graphs");
    count_spanning_trees_block_counted(&decomposition)
}

fn path_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::build(n, &edges).expect("path edges are simple")
}

fn time_min<F: FnMut() -> u64>(reps: usize, mut run: F) -> (f64, u64) {
    let mut best = f64::INFINITY;
    let mut multiplications = 0;
    for _ in 0..reps {
        let start = Instant::now();
        multiplications = run();
        best = best.min(start.elapsed().as_secs_f64());
    }
    (best, multiplications)
}

/// Runs both pipelines over the given sizes.  `reps` bounds the repetitions
/// per point; larger inputs use fewer to keep the ladder affordable.
pub fn run_ladder(sizes: &[usize], reps: usize) -> BenchReport {
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        // Chain of cliques: every separator multiplicity is 1.
        let (ktree, _) = random_k_tree(&GenSpec {
            seed: 42,
            n,
            k: 2,
            shape_bias: 0.0,
        })
        .expect("ladder sizes exceed k+1");
        let block = path_graph(n);
        let point_reps = if n <= (1 << 16) { reps } else { reps.clamp(1, 2) };
        // Untimed warm-up run per input.
        let _ = std::hint::black_box(ktree_pipeline(&ktree));
        let _ = std::hint::black_box(block_pipeline(&block));
        let (ktree_secs, ktree_multiplications) =
            time_min(point_reps, || std::hint::black_box(ktree_pipeline(&ktree)).1);
        let (block_secs, block_multiplications) =
            time_min(point_reps, || std::hint::black_box(block_pipeline(&block)).1);
        points.push(BenchPoint {
            n,
            ktree_secs,
            ktree_multiplications,
            block_secs,
            block_multiplications,
        });
    }
    BenchReport { points }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_reports_all_points() {
        let report = run_ladder(&[64, 128], 2);
        assert_eq!(report.points.len(), 2);
        for p in &report.points {
            assert!(p.ktree_secs >= 0.0 && p.block_secs >= 0.0);
            // A chain k-tree has n − k − 1 unit multiplicities, so the
            // counting stage multiplies nothing.
            assert_eq!(p.ktree_multiplications, 0);
            assert_eq!(p.block_multiplications, 0);
        }
        assert_eq!(report.ktree_ratios().len(), 1);
    }

    #[test]
    fn pipelines_compute_the_expected_counts() {
        let (g, _) = random_k_tree(&GenSpec {
            seed: 1,
            n: 64,
            k: 2,
            shape_bias: 0.0,
        })
        .unwrap();
        let (count, _) = ktree_pipeline(&g);
        assert_eq!(count, BigCount::from(1u32));
        let (count, _) = block_pipeline(&path_graph(64));
        assert_eq!(count, BigCount::from(1u32));
    }
}
