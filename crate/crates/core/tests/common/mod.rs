//! Shared helpers for the integration suites: seeded construction of
//! arbitrary connected chordal graphs and of plain random graphs.

use cliquecount::chordal::analyze;
use cliquecount::generators::SplitMix64;
use cliquecount::graph::Graph;

/// Connected chordal graph grown vertex by vertex: each new vertex is glued
/// onto a non-empty subset of a random maximal clique of the graph so far,
/// which preserves chordality and connectivity at every step.
pub fn random_connected_chordal(seed: u64, max_n: usize) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let n = 2 + rng.gen_index(max_n.max(2) - 1);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let current = Graph::build(v, &edges).expect("intermediate stages are simple");
        let analysis = analyze(&current).expect("intermediate stages are connected chordal");
        let clique = &analysis.cliques[rng.gen_index(analysis.cliques.len())];
        let mut members: Vec<usize> = clique.iter().collect();
        let size = 1 + rng.gen_index(members.len());
        for j in 0..size {
            let swap = j + rng.gen_index(members.len() - j);
            members.swap(j, swap);
        }
        for &u in &members[..size] {
            edges.push((u, v));
        }
    }
    Graph::build(n, &edges).expect("final graph is simple")
}

/// Erdős–Rényi-style random graph: every pair becomes an edge independently
/// with probability ~`density`/8.
#[allow(dead_code)]
pub fn random_graph(seed: u64, n: usize, density: u32) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_index(8) < density as usize {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).expect("pairs are generated once")
}
