//! The JSON document printed by `analyze`.  Every key is always present so
//! downstream tooling can rely on the shape; inapplicable fields are null.
//! Tree counts are decimal strings, since they overflow fixed-width integers
//! long before inputs stop being interesting.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Serialize)]
pub struct SeparatorEntry {
    pub separator: Vec<usize>,
    pub multiplicity: usize,
}

#[derive(Debug, Default, Serialize)]
pub struct OpCount {
    /// Multiplications spent producing `clique_trees`, when that route
    /// counts them (the uniform-separator fast path).
    pub clique_trees: Option<u64>,
    /// Multiplications spent producing `spanning_trees` on block graphs.
    pub spanning_trees: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct ResultDocument {
    pub input: InputInfo,
    /// `k-tree(K)`, `block graph`, `chordal`, `not chordal`, or `disconnected`.
    pub classification: String,
    pub k: Option<usize>,
    /// Number of clique trees (decimal string); present when chordal.
    pub clique_trees: Option<String>,
    /// Number of spanning trees (decimal string); present for block graphs.
    pub spanning_trees: Option<String>,
    pub separators: Option<Vec<SeparatorEntry>>,
    /// Whether the reduced clique graph equals the (k+1)-line graph;
    /// computed for k-trees.
    pub cr_equals_k_line: Option<bool>,
    /// A chordless cycle of length >= 4, when the input is not chordal.
    pub witness_cycle: Option<Vec<usize>>,
    /// Per-oracle verdicts under `--verify`: "agree", "disagree", or
    /// "cap-exceeded".
    pub oracle_agreement: Option<BTreeMap<String, String>>,
    pub op_count: OpCount,
    /// Wall-clock time of recognition and counting, excluding oracles.
    pub wall_ms: f64,
}
