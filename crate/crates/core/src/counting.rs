//! Exact counting of clique trees and spanning trees from structure alone.
//!
//! For a connected chordal graph the number of clique trees factors over its
//! minimal vertex separators: removing a separator S splits the graph into
//! components, and the components seeing all of S contribute
//! `t^(f−2) · ∏ tᵢ`, where f is their number, tᵢ how many maximal cliques
//! the i-th of them holds that contain S, and t = Σ tᵢ.  On the two uniform
//! families the factorization collapses to closed forms: `∏ (μ+1)^(μ−1)`
//! over separator multiplicities for k-trees, and `∏ b^(b−2)` over block
//! sizes for spanning trees of block graphs.
//!
//! The `_counted` variants compute the same products one multiplication at a
//! time and report how many they needed; the factor counts are bounded by
//! the input size, which makes the near-linear cost of the uniform routes
//! checkable from outside.

use crate::chordal::{analyze, ChordalError, SeparatorTable};
use crate::graph::{BigCount, Graph, VertexSet};
use crate::recognition::BlockDecomposition;

/// One separator's contribution to the clique-tree count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorFactor {
    pub separator: VertexSet,
    /// Number of maximal cliques containing the separator in each component
    /// of `g − separator` that sees the whole separator.
    pub component_clique_counts: Vec<usize>,
    pub factor: BigCount,
}

/// Clique-tree count of a connected chordal graph, broken down by separator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorFactorization {
    pub factors: Vec<SeparatorFactor>,
}

impl SeparatorFactorization {
    pub fn product(&self) -> BigCount {
        let mut acc = BigCount::from(1u32);
        for f in &self.factors {
            acc *= &f.factor;
        }
        acc
    }
}

/// Counts the clique trees of a connected chordal graph by the separator
/// factorization.  Each factor is returned alongside the total so callers
/// can inspect which separator contributed what.
pub fn count_clique_trees_general(
    g: &Graph,
) -> Result<(BigCount, SeparatorFactorization), ChordalError> {
    let analysis = analyze(g)?;
    let mut factors = Vec::with_capacity(analysis.table.len());
    for (separator, _) in analysis.table.entries() {
        let mut in_separator = vec![false; g.n()];
        for v in separator.iter() {
            in_separator[v] = true;
        }
        // Components of g − S, tracked per vertex.
        let mut component = vec![usize::MAX; g.n()];
        let mut count = 0usize;
        for start in 0..g.n() {
            if in_separator[start] || component[start] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let mut queue = std::collections::VecDeque::new();
            component[start] = id;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if !in_separator[w] && component[w] == usize::MAX {
                        component[w] = id;
                        queue.push_back(w);
                    }
                }
            }
        }
        // A component is full when it is adjacent to every vertex of S.
        let mut seen_of: Vec<usize> = vec![0; count];
        let mut stamp: Vec<Vec<bool>> = vec![vec![false; separator.len()]; count];
        for (s_idx, s) in separator.iter().enumerate() {
            for &w in g.neighbors(s) {
                if in_separator[w] {
                    continue;
                }
                let c = component[w];
                if !stamp[c][s_idx] {
                    stamp[c][s_idx] = true;
                    seen_of[c] += 1;
                }
            }
        }
        // Count the maximal cliques holding S, bucketed by the component
        // their non-S part lives in.
        let mut clique_counts = vec![0usize; count];
        for q in &analysis.cliques {
            if q.len() > separator.len() && separator.is_subset_of(q) {
                let v = q
                    .iter()
                    .find(|v| !separator.contains(*v))
                    .expect("clique is strictly larger than the separator");
                clique_counts[component[v]] += 1;
            }
        }
        let full: Vec<usize> = (0..count)
            .filter(|&c| seen_of[c] == separator.len())
            .collect();
        debug_assert!(
            full.len() >= 2,
            "a minimal separator has at least two full components"
        );
        let component_clique_counts: Vec<usize> = full.iter().map(|&c| clique_counts[c]).collect();
        debug_assert!(component_clique_counts.iter().all(|&t| t >= 1));
        let total: usize = component_clique_counts.iter().sum();
        let mut factor = BigCount::from(total as u64);
        factor = pow_big(&factor, (full.len() - 2) as u64);
        for &t in &component_clique_counts {
            factor *= BigCount::from(t as u64);
        }
        factors.push(SeparatorFactor {
            separator: separator.clone(),
            component_clique_counts,
            factor,
        });
    }
    let factorization = SeparatorFactorization { factors };
    Ok((factorization.product(), factorization))
}

fn pow_big(base: &BigCount, exp: u64) -> BigCount {
    // Repeated squaring; BigCount exponents never exceed u64 here.
    let mut result = BigCount::from(1u32);
    let mut base = base.clone();
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result *= &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    result
}

/// Clique-tree count of a k-tree from its separator table alone:
/// `∏ (μ+1)^(μ−1)` over the multiplicities μ.
pub fn count_clique_trees_ktree(table: &SeparatorTable) -> BigCount {
    let mut acc = BigCount::from(1u32);
    for &(_, mu) in table.entries() {
        acc *= pow_big(&BigCount::from((mu + 1) as u64), (mu - 1) as u64);
    }
    acc
}

/// Same count, computed one big-integer multiplication at a time.  Returns
/// the count and the number of multiplications, which is less than the
/// number of vertices of the underlying k-tree.
pub fn count_clique_trees_ktree_counted(table: &SeparatorTable) -> (BigCount, u64) {
    let mut acc = BigCount::from(1u32);
    let mut multiplications = 0u64;
    for &(_, mu) in table.entries() {
        let base = BigCount::from((mu + 1) as u64);
        for _ in 1..mu {
            acc *= &base;
            multiplications += 1;
        }
    }
    (acc, multiplications)
}

/// Spanning-tree count of a connected block graph from its block sizes:
/// `∏ b^(b−2)` over the blocks.  K₁ has no blocks and one (empty) tree.
pub fn count_spanning_trees_block(decomposition: &BlockDecomposition) -> BigCount {
    let mut acc = BigCount::from(1u32);
    for block in &decomposition.blocks {
        let b = block.len() as u64;
        acc *= pow_big(&BigCount::from(b), b - 2);
    }
    acc
}

/// Same count, one multiplication at a time; the multiplication count stays
/// below n + m of the underlying graph.
pub fn count_spanning_trees_block_counted(decomposition: &BlockDecomposition) -> (BigCount, u64) {
    let mut acc = BigCount::from(1u32);
    let mut multiplications = 0u64;
    for block in &decomposition.blocks {
        let b = BigCount::from(block.len() as u64);
        for _ in 2..block.len() {
            acc *= &b;
            multiplications += 1;
        }
    }
    (acc, multiplications)
}
