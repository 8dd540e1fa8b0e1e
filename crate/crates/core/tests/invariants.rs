//! Cross-module invariants on randomized instances: every structural claim
//! one module relies on is produced by another module, so these tests pin
//! the seams between them.

mod common;

use cliquecount::chordal::{
    analyze, build_clique_tree_with_strategy, recognize_chordal, separator_table, Chordality,
    TreeStrategy,
};
use cliquecount::clique_graph::{
    clique_intersection_graph, k_line_graph, reduced_clique_graph, reduced_clique_graph_exhaustive,
};
use cliquecount::counting::{
    count_clique_trees_general, count_clique_trees_ktree, count_clique_trees_ktree_counted,
};
use cliquecount::generators::{random_k_tree, GenSpec};
use cliquecount::graph::Graph;
use cliquecount::oracles::{enumerate_clique_trees, OracleError};
use cliquecount::recognition::{recognize_k_tree, KTreeDecision};

use common::{random_connected_chordal, random_graph};

fn ktree_specs() -> impl Iterator<Item = GenSpec> {
    (0..40u64).map(|i| GenSpec {
        seed: i.wrapping_mul(0x9E37_79B9) + 1,
        n: 4 + (i as usize * 7) % 25,
        k: 1 + (i as usize) % 4,
        shape_bias: (i as f64 % 11.0) / 10.0,
    })
    .map(|mut s| {
        s.n = s.n.max(s.k + 1);
        s
    })
}

#[test]
fn clique_tree_edges_lie_in_the_reduced_clique_graph() {
    let mut graphs: Vec<Graph> = (0..25).map(|s| random_connected_chordal(s, 12)).collect();
    graphs.extend(ktree_specs().take(15).map(|s| random_k_tree(&s).unwrap().0));
    for g in &graphs {
        let analysis = analyze(g).unwrap();
        let reduced = reduced_clique_graph(g, &analysis.cliques).unwrap();
        // Both sides index cliques in lexicographic order.
        assert_eq!(reduced.nodes(), analysis.cliques.as_slice());
        for strategy in [
            TreeStrategy::MaxWeightPrim,
            TreeStrategy::MaxWeightPrimHighTie,
            TreeStrategy::McsDirect,
        ] {
            let tree = build_clique_tree_with_strategy(g, &analysis.cliques, strategy).unwrap();
            for e in &tree.edges {
                assert_eq!(
                    reduced.edge_weight(e.a, e.b),
                    Some(e.separator.len()),
                    "tree edge ({}, {}) missing from the reduced clique graph",
                    e.a,
                    e.b
                );
            }
        }
    }
}

#[test]
fn separator_tables_are_invariant_across_tree_strategies() {
    for seed in 0..40u64 {
        let g = random_connected_chordal(seed, 12);
        let analysis = analyze(&g).unwrap();
        let tables: Vec<_> = [
            TreeStrategy::MaxWeightPrim,
            TreeStrategy::MaxWeightPrimHighTie,
            TreeStrategy::McsDirect,
        ]
        .into_iter()
        .map(|s| {
            separator_table(&build_clique_tree_with_strategy(&g, &analysis.cliques, s).unwrap())
        })
        .collect();
        assert_eq!(tables[0], tables[1]);
        assert_eq!(tables[0], tables[2]);
        assert_eq!(tables[0], analysis.table);
        assert_eq!(
            analysis.table.total_multiplicity(),
            analysis.cliques.len() - 1
        );
    }
}

#[test]
fn recognition_certificates_replay_to_the_input() {
    for spec in ktree_specs() {
        let (g, generated) = random_k_tree(&spec).unwrap();
        assert_eq!(generated.replay().unwrap(), g);
        match recognize_k_tree(&g) {
            KTreeDecision::Accepted { k, certificate } => {
                assert_eq!(k, spec.k);
                assert_eq!(certificate.replay().unwrap(), g);
            }
            KTreeDecision::Rejected(r) => panic!("generated k-tree rejected: {r:?}"),
        }
    }
}

#[test]
fn witness_cycles_are_genuinely_chordless() {
    let mut non_chordal_seen = 0;
    for seed in 0..300u64 {
        let g = random_graph(seed, 9, 3);
        if !g.is_connected() {
            continue;
        }
        if let Chordality::NotChordal(cycle) = recognize_chordal(&g).unwrap() {
            non_chordal_seen += 1;
            assert!(cycle.len() >= 4);
            let len = cycle.len();
            for i in 0..len {
                for j in (i + 1)..len {
                    let consecutive = j == i + 1 || (i == 0 && j == len - 1);
                    assert_eq!(
                        g.has_edge(cycle[i], cycle[j]),
                        consecutive,
                        "cycle {cycle:?} has a chord or a gap at ({i}, {j})"
                    );
                }
            }
        }
    }
    assert!(
        non_chordal_seen >= 30,
        "sampling produced too few non-chordal graphs ({non_chordal_seen}) to be meaningful"
    );
}

#[test]
fn reduced_clique_graph_routes_agree() {
    // On k-trees the bucket shortcut applies; the exhaustive route must see
    // the same graph.
    for spec in ktree_specs().take(20) {
        let (g, _) = random_k_tree(&spec).unwrap();
        let cliques = analyze(&g).unwrap().cliques;
        assert_eq!(
            reduced_clique_graph(&g, &cliques).unwrap(),
            reduced_clique_graph_exhaustive(&g, &cliques).unwrap()
        );
    }
}

#[test]
fn k_line_graph_routes_agree() {
    // A connected chordal graph goes through the clique-subset route; the
    // same graph plus one isolated vertex is forced onto the backtracking
    // route, and for k ≥ 2 the isolated vertex changes nothing.
    for seed in 0..20u64 {
        let g = random_connected_chordal(seed, 9);
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.sort_unstable();
        let padded = Graph::build(g.n() + 1, &edges).unwrap();
        let omega = analyze(&g).unwrap().clique_number();
        for k in 2..=omega.max(2) {
            let via_cliques = k_line_graph(&g, k).unwrap();
            let via_backtracking = k_line_graph(&padded, k).unwrap();
            assert_eq!(via_cliques, via_backtracking, "k = {k} differs");
        }
    }
}

#[test]
fn combined_clique_size_stays_below_input_size() {
    for seed in 0..40u64 {
        let g = random_connected_chordal(seed, 12);
        let analysis = analyze(&g).unwrap();
        assert!(analysis.total_clique_size() < g.n() + g.m());
    }
    for spec in ktree_specs() {
        let (g, _) = random_k_tree(&spec).unwrap();
        let analysis = analyze(&g).unwrap();
        assert!(analysis.total_clique_size() < g.n() + g.m());
    }
}

#[test]
fn counting_routes_agree_on_chordal_instances() {
    let mut enumerated = 0;
    for seed in 0..30u64 {
        let g = random_connected_chordal(seed, 10);
        let (count, factorization) = count_clique_trees_general(&g).unwrap();
        assert_eq!(count, factorization.product());
        let cliques = analyze(&g).unwrap().cliques;
        match enumerate_clique_trees(&clique_intersection_graph(&cliques), 4_000_000) {
            Ok(reference) => {
                enumerated += 1;
                assert_eq!(count, reference, "seed {seed} disagrees with enumeration");
            }
            Err(OracleError::CapExceeded { .. }) => continue,
            Err(e) => panic!("unexpected oracle failure: {e}"),
        }
    }
    assert!(enumerated >= 20, "too many instances over the cap");
}

#[test]
fn ktree_count_collapses_to_the_multiplicity_product() {
    for spec in ktree_specs() {
        let (g, _) = random_k_tree(&spec).unwrap();
        let analysis = analyze(&g).unwrap();
        let closed = count_clique_trees_ktree(&analysis.table);
        let (counted, steps) = count_clique_trees_ktree_counted(&analysis.table);
        assert_eq!(closed, counted);
        assert!((steps as usize) < g.n());
        assert_eq!(closed, count_clique_trees_general(&g).unwrap().0);
    }
}
