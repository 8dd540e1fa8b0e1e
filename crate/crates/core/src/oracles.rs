//! Independent verification routes: Kirchhoff determinant counting with
//! exact integer arithmetic, and exhaustive deletion/contraction
//! enumeration.  Nothing here shares code with the closed-form counting
//! in [`crate::counting`], so the two sides can cross-check each other.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::clique_graph::WeightedCliqueGraph;
use crate::graph::{BigCount, Graph};

/// Hard edge-count limit for exhaustive spanning-tree enumeration; beyond
/// this the recursion tree is hopeless regardless of the step budget.
pub const ENUMERATION_EDGE_LIMIT: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is disconnected; the spanning-tree count is zero")]
    Disconnected,
    #[error("enumeration exceeded its budget of {cap} recursion steps")]
    CapExceeded { cap: u64 },
    #[error("too many edges for exhaustive enumeration: {m} > {limit}")]
    TooManyEdges { m: usize, limit: usize },
    #[error("vertex {v} out of range for a graph with n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Dense square matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zero(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            rows: vec![vec![BigInt::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.rows[i][j] = value;
    }

    /// Matrix with row and column `idx` removed.
    pub fn minor(&self, idx: usize) -> IntegerMatrix {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != idx)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        IntegerMatrix {
            dim: self.dim - 1,
            rows,
        }
    }

    /// Exact determinant by Bareiss fraction-free elimination: every
    /// division along the way is exact, so no rationals are needed.
    pub fn determinant(&self) -> BigInt {
        let d = self.dim;
        if d == 0 {
            return BigInt::one();
        }
        let mut m = self.rows.clone();
        let mut sign_flip = false;
        let mut prev = BigInt::one();
        for k in 0..d - 1 {
            if m[k][k].is_zero() {
                match (k + 1..d).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return BigInt::zero(),
                }
            }
            let pivot_row = m[k].clone();
            for row in m.iter_mut().skip(k + 1) {
                let lead = std::mem::replace(&mut row[k], BigInt::zero());
                for j in k + 1..d {
                    let num = &pivot_row[k] * &row[j] - &lead * &pivot_row[j];
                    row[j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let det = std::mem::take(&mut m[d - 1][d - 1]);
        if sign_flip {
            -det
        } else {
            det
        }
    }
}

/// Laplacian matrix `D - A` of a graph.
pub fn laplacian(g: &Graph) -> IntegerMatrix {
    let n = g.n();
    let mut m = IntegerMatrix::zero(n);
    for v in 0..n {
        m.set(v, v, BigInt::from(g.degree(v)));
        for &w in g.neighbors(v) {
            m.set(v, w, -BigInt::one());
        }
    }
    m
}

/// Cofactor of the Laplacian at the given index; by the matrix-tree theorem
/// this equals the number of spanning trees, whichever index is struck out.
pub fn laplacian_cofactor(g: &Graph, idx: usize) -> Result<BigCount, OracleError> {
    if idx >= g.n() {
        return Err(OracleError::VertexOutOfRange { v: idx, n: g.n() });
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let det = laplacian(g).minor(idx).determinant();
    debug_assert!(!det.is_negative(), "Laplacian cofactors are non-negative");
    Ok(det.to_biguint().expect("checked non-negative"))
}

/// Spanning-tree count via the Kirchhoff determinant route.
pub fn kirchhoff_count(g: &Graph) -> Result<BigCount, OracleError> {
    laplacian_cofactor(g, 0)
}

/// Multigraph edge classes used by the deletion/contraction recursions:
/// endpoints plus a parallel multiplicity.
type EdgeClass = (usize, usize, u64);

fn classes_connected(nv: usize, edges: &[EdgeClass]) -> bool {
    if nv <= 1 {
        return true;
    }
    let mut root: Vec<usize> = (0..nv).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    let mut parts = nv;
    for &(u, v, _) in edges {
        let (ru, rv) = (find(&mut root, u), find(&mut root, v));
        if ru != rv {
            root[ru] = rv;
            parts -= 1;
        }
    }
    parts == 1
}

/// Contracts `v` into `u`: drops the (u, v) class, relabels the remaining
/// endpoints into `0..nv-1` and merges classes that become parallel.
fn contract(nv: usize, edges: &[EdgeClass], u: usize, v: usize) -> (usize, Vec<EdgeClass>) {
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    let mut merged: Vec<EdgeClass> = Vec::with_capacity(edges.len());
    for &(a, b, c) in edges {
        let (mut a, mut b) = (relabel(a), relabel(b));
        if a == b {
            continue; // the contracted edge class itself, or a parallel copy
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        match merged.iter_mut().find(|(x, y, _)| *x == a && *y == b) {
            Some(class) => class.2 += c,
            None => merged.push((a, b, c)),
        }
    }
    (nv - 1, merged)
}

fn spanning_tree_recursion(
    nv: usize,
    edges: &[EdgeClass],
    budget: &mut u64,
    cap: u64,
) -> Result<u128, OracleError> {
    if *budget == 0 {
        return Err(OracleError::CapExceeded { cap });
    }
    *budget -= 1;
    if nv == 1 {
        return Ok(1);
    }
    if !classes_connected(nv, edges) {
        return Ok(0);
    }
    let (u, v, c) = edges[0];
    // Trees avoiding the whole class, plus c choices of a class member to
    // contract.
    let deleted = spanning_tree_recursion(nv, &edges[1..], budget, cap)?;
    let (cn, cedges) = contract(nv, edges, u, v);
    let contracted = spanning_tree_recursion(cn, &cedges, budget, cap)?;
    Ok(deleted + u128::from(c) * contracted)
}

/// Counts spanning trees by exhaustive deletion/contraction.  Deliberately
/// naive — this is the reference the closed-form and determinant routes are
/// checked against — so it only accepts small graphs.
pub fn enumerate_spanning_trees(g: &Graph, cap: u64) -> Result<BigCount, OracleError> {
    if g.m() > ENUMERATION_EDGE_LIMIT {
        return Err(OracleError::TooManyEdges {
            m: g.m(),
            limit: ENUMERATION_EDGE_LIMIT,
        });
    }
    let edges: Vec<EdgeClass> = g.edges().map(|(u, v)| (u, v, 1)).collect();
    let mut budget = cap;
    let count = spanning_tree_recursion(g.n(), &edges, &mut budget, cap)?;
    Ok(BigCount::from(count))
}

/// Weight-class edge for the weighted enumeration: endpoints, edge weight,
/// parallel multiplicity.
type WeightedClass = (usize, usize, u64, u64);

fn contract_weighted(
    nv: usize,
    edges: &[WeightedClass],
    u: usize,
    v: usize,
    w: u64,
) -> (usize, Vec<WeightedClass>) {
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    let mut merged: Vec<WeightedClass> = Vec::with_capacity(edges.len());
    for &(a, b, wt, c) in edges {
        if a == u && b == v && wt == w {
            continue; // the contracted class
        }
        let (mut a, mut b) = (relabel(a), relabel(b));
        if a == b {
            continue; // parallel class of different weight becomes a loop
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        match merged
            .iter_mut()
            .find(|(x, y, xw, _)| *x == a && *y == b && *xw == wt)
        {
            Some(class) => class.3 += c,
            None => merged.push((a, b, wt, c)),
        }
    }
    (nv - 1, merged)
}

/// Spanning-tree generating function by total weight: weight ↦ tree count.
fn weighted_tree_recursion(
    nv: usize,
    edges: &[WeightedClass],
    budget: &mut u64,
    cap: u64,
) -> Result<Vec<(u64, u128)>, OracleError> {
    if *budget == 0 {
        return Err(OracleError::CapExceeded { cap });
    }
    *budget -= 1;
    if nv == 1 {
        return Ok(vec![(0, 1)]);
    }
    let classes: Vec<EdgeClass> = edges.iter().map(|&(a, b, _, c)| (a, b, c)).collect();
    if !classes_connected(nv, &classes) {
        return Ok(Vec::new());
    }
    let (u, v, w, c) = edges[0];
    let mut totals = weighted_tree_recursion(nv, &edges[1..], budget, cap)?;
    let (cn, cedges) = contract_weighted(nv, edges, u, v, w);
    for (wt, count) in weighted_tree_recursion(cn, &cedges, budget, cap)? {
        let wt = wt + w;
        let count = u128::from(c) * count;
        match totals.iter_mut().find(|(x, _)| *x == wt) {
            Some(entry) => entry.1 += count,
            None => totals.push((wt, count)),
        }
    }
    Ok(totals)
}

/// Counts maximum-weight spanning trees of a weighted clique graph by
/// exhaustive deletion/contraction over the weight generating function.
/// For the clique intersection graph of a connected chordal graph the
/// maximum-weight spanning trees are exactly the clique trees, so this is
/// the enumeration reference for clique-tree counting.
pub fn enumerate_clique_trees(wcg: &WeightedCliqueGraph, cap: u64) -> Result<BigCount, OracleError> {
    let nv = wcg.nodes().len();
    if nv == 0 {
        return Ok(BigCount::from(0u32));
    }
    let edges: Vec<WeightedClass> = wcg
        .edges()
        .iter()
        .map(|&(i, j, w)| (i, j, w as u64, 1))
        .collect();
    let mut budget = cap;
    let totals = weighted_tree_recursion(nv, &edges, &mut budget, cap)?;
    let best = totals
        .iter()
        .max_by_key(|(w, _)| *w)
        .map(|&(_, count)| count)
        .unwrap_or(0);
    Ok(BigCount::from(best))
}
