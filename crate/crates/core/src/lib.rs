//! Clique trees and exact tree counting for chordal graphs.
//!
//! The library recognizes chordal graphs, k-trees and block graphs, builds
//! clique trees and clique-level derived graphs (clique intersection graph,
//! reduced clique graph, k-line graph), and counts clique trees and spanning
//! trees exactly with arbitrary-precision integers.  Every counting routine
//! has an independent oracle (Kirchhoff determinant or exhaustive
//! deletion/contraction) so results can be cross-checked.

#![forbid(unsafe_code)]

pub mod bench;
pub mod chordal;
pub mod clique_graph;
pub mod counting;
pub mod generators;
pub mod graph;
pub mod oracles;
pub mod recognition;

pub use chordal::{
    analyze, build_clique_tree, build_clique_tree_with_strategy, maximal_cliques,
    recognize_chordal, separator_table, ChordalAnalysis, ChordalError, Chordality, CliqueTree,
    CliqueTreeEdge, EliminationOrdering, SeparatorTable, TreeStrategy,
};
pub use clique_graph::{
    clique_intersection_graph, is_separating_pair, k_line_graph, k_line_graph_capped,
    reduced_clique_graph, reduced_clique_graph_exhaustive, CliqueGraphError, WeightedCliqueGraph,
    K_CLIQUE_CAP,
};
pub use counting::{
    count_clique_trees_general, count_clique_trees_ktree, count_clique_trees_ktree_counted,
    count_spanning_trees_block, count_spanning_trees_block_counted, SeparatorFactor,
    SeparatorFactorization,
};
pub use generators::{
    block_graph_from_sizes, block_graph_to_k_tree, random_block_graph, random_k_tree, GenError,
    GenSpec, SplitMix64,
};
pub use graph::{BigCount, Graph, GraphError, VertexSet};
pub use oracles::{
    enumerate_clique_trees, enumerate_spanning_trees, kirchhoff_count, laplacian,
    laplacian_cofactor, IntegerMatrix, OracleError, ENUMERATION_EDGE_LIMIT,
};
pub use recognition::{
    canonical_block_code, cr_equals_k_line, max_claw_size, recognize_block_graph,
    recognize_k_tree, BlockDecomposition, BlockRejection, CertificateError, KTreeCertificate,
    KTreeDecision, KTreeRejection,
};
