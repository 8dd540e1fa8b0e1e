//! Chordal graph machinery: maximum cardinality search, perfect elimination
//! orderings, maximal cliques, clique trees and minimal-separator tables.
//!
//! Recognition follows the classic maximum-cardinality-search approach: MCS
//! visits vertices by descending count of visited neighbors, the reverse
//! visit order is checked with the Tarjan–Yannakakis zero fill-in test, and
//! on failure a chordless cycle of length at least four is extracted as a
//! witness.  Cliques and the clique tree are read off the same search, so the
//! whole pipeline stays near-linear in the size of the graph.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordalError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not chordal (chordless cycle {0:?})")]
    NotChordal(Vec<usize>),
    #[error("ordering is not a perfect elimination ordering of this graph")]
    InvalidOrdering,
    #[error("clique list does not match the maximal cliques of this graph")]
    CliqueSetMismatch,
}

/// An elimination ordering of the vertices; `order()[0]` is eliminated first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl EliminationOrdering {
    /// Wraps an ordering, checking that it is a permutation of `0..len`.
    pub fn new(order: Vec<usize>) -> Result<Self, ChordalError> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(ChordalError::InvalidOrdering);
            }
            position[v] = i;
        }
        Ok(EliminationOrdering { order, position })
    }

    fn from_permutation(order: Vec<usize>) -> Self {
        EliminationOrdering::new(order).expect("internal orderings are permutations")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Elimination position of vertex `v` (0 = eliminated first).
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }
}

/// Outcome of chordality recognition: a perfect elimination ordering, or a
/// chordless cycle of length at least four as a counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrdering),
    NotChordal(Vec<usize>),
}

/// Edge of a clique tree; `a` and `b` index into the clique list and the
/// separator is the intersection of the two endpoint cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueTreeEdge {
    pub a: usize,
    pub b: usize,
    pub separator: VertexSet,
}

/// A clique tree: the maximal cliques of a connected chordal graph joined
/// into a tree such that for every vertex the cliques containing it form a
/// subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueTree {
    pub cliques: Vec<VertexSet>,
    pub edges: Vec<CliqueTreeEdge>,
}

impl CliqueTree {
    /// Total separator weight of the tree (every clique tree of a graph
    /// attains the same, maximum, value).
    pub fn weight(&self) -> usize {
        self.edges.iter().map(|e| e.separator.len()).sum()
    }
}

/// Minimal vertex separators of a connected chordal graph with their
/// multiplicities, i.e. how often each appears among clique-tree edges.
/// The table is identical for every clique tree of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorTable {
    entries: Vec<(VertexSet, usize)>,
}

impl SeparatorTable {
    /// Entries sorted lexicographically by separator.
    pub fn entries(&self) -> &[(VertexSet, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, s: &VertexSet) -> Option<usize> {
        self.entries
            .binary_search_by(|(sep, _)| sep.cmp(s))
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Sum of multiplicities; always one less than the number of cliques.
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, mu)| mu).sum()
    }
}

/// Everything the rest of the library needs from one pass over a connected
/// chordal graph: a perfect elimination ordering, the maximal cliques in
/// lexicographic order, a clique tree over those indices and the separator
/// multiplicity table.
#[derive(Debug, Clone)]
pub struct ChordalAnalysis {
    pub ordering: EliminationOrdering,
    pub cliques: Vec<VertexSet>,
    pub tree: CliqueTree,
    pub table: SeparatorTable,
}

impl ChordalAnalysis {
    /// Size of the largest clique.
    pub fn clique_number(&self) -> usize {
        self.cliques.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// Combined size of all maximal cliques; stays below n + m on every
    /// connected chordal graph with at least one edge.
    pub fn total_clique_size(&self) -> usize {
        self.cliques.iter().map(|c| c.len()).sum()
    }
}

/// Maximum cardinality search. Returns the elimination ordering given by the
/// reverse visit order; ties are broken towards the lowest vertex id.
fn mcs_order(g: &Graph) -> EliminationOrdering {
    let n = g.n();
    let mut label = vec![0usize; n];
    let mut visited = vec![false; n];
    // Lazy max-heap keyed by (label, lowest id); stale entries are skipped.
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = BinaryHeap::with_capacity(n + g.m());
    for v in 0..n {
        heap.push((0, Reverse(v)));
    }
    let mut visit = Vec::with_capacity(n);
    while visit.len() < n {
        let (lab, Reverse(v)) = heap.pop().expect("heap holds every unvisited vertex");
        if visited[v] || label[v] != lab {
            continue;
        }
        visited[v] = true;
        visit.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                label[w] += 1;
                heap.push((label[w], Reverse(w)));
            }
        }
    }
    visit.reverse();
    EliminationOrdering::from_permutation(visit)
}

/// Zero fill-in test: an ordering is a perfect elimination ordering iff for
/// every vertex its later neighbors form a clique.  On failure returns a
/// triple `(x, v, w)` where `x` precedes `v` precedes `w`, `x` is adjacent to
/// both `v` and `w`, but `v` and `w` are not adjacent.
fn zero_fill_in_check(g: &Graph, ordering: &EliminationOrdering) -> Option<(usize, usize, usize)> {
    let n = g.n();
    // pending[v] holds (w, x): vertex w must turn out adjacent to v, required
    // by the earlier vertex x whose later neighborhood contains both.
    let mut pending: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &v in ordering.order() {
        for &(w, x) in &pending[v] {
            if !g.has_edge(v, w) {
                return Some((x, v, w));
            }
        }
        let pos_v = ordering.position(v);
        let mut follower: Option<usize> = None;
        for &w in g.neighbors(v) {
            if ordering.position(w) > pos_v {
                match follower {
                    None => follower = Some(w),
                    Some(u) if ordering.position(w) < ordering.position(u) => follower = Some(w),
                    _ => {}
                }
            }
        }
        if let Some(u) = follower {
            for &w in g.neighbors(v) {
                if ordering.position(w) > pos_v && w != u {
                    pending[u].push((w, v));
                }
            }
        }
    }
    None
}

/// Breadth-first path from `a` to `b` that avoids `x` and every neighbor of
/// `x` other than `a` and `b`; together with `x` such a path closes a
/// chordless cycle.
fn cycle_through(g: &Graph, x: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut blocked = vec![false; n];
    blocked[x] = true;
    for &w in g.neighbors(x) {
        blocked[w] = true;
    }
    blocked[a] = false;
    blocked[b] = false;
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    parent[a] = a;
    queue.push_back(a);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &w in g.neighbors(u) {
            if !blocked[w] && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if parent[b] == usize::MAX {
        return None;
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[cur];
        path.push(cur);
    }
    path.push(x);
    path.reverse();
    // path is now x, a, ..., b; the shortest detour keeps the cycle chordless.
    debug_assert!(path.len() >= 4);
    Some(path)
}

/// Extracts a chordless cycle of length at least four from a non-chordal
/// graph.  `hint` is the failing triple of the zero fill-in test; if the
/// detour for the hint is blocked, every common-neighbor pair is scanned.
fn find_chordless_cycle(g: &Graph, hint: Option<(usize, usize, usize)>) -> Vec<usize> {
    if let Some((x, a, b)) = hint {
        if let Some(cycle) = cycle_through(g, x, a, b) {
            return cycle;
        }
    }
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                let (a, b) = (nb[i], nb[j]);
                if !g.has_edge(a, b) {
                    if let Some(cycle) = cycle_through(g, x, a, b) {
                        return cycle;
                    }
                }
            }
        }
    }
    unreachable!("a non-chordal graph contains a chordless cycle through some common-neighbor pair")
}

/// Recognizes connected chordal graphs.  Returns a perfect elimination
/// ordering on success and a chordless cycle of length at least four
/// otherwise; disconnected input is reported as an error.
pub fn recognize_chordal(g: &Graph) -> Result<Chordality, ChordalError> {
    if !g.is_connected() {
        return Err(ChordalError::Disconnected);
    }
    let ordering = mcs_order(g);
    match zero_fill_in_check(g, &ordering) {
        None => Ok(Chordality::Chordal(ordering)),
        Some(triple) => Ok(Chordality::NotChordal(find_chordless_cycle(g, Some(triple)))),
    }
}

/// The maximal cliques of a chordal graph, read off a perfect elimination
/// ordering: the candidate clique of vertex `v` is `v` plus its later
/// neighbors, and it is maximal unless a child absorbs it.  Cliques are
/// returned in lexicographic order, each sorted.
pub fn maximal_cliques(
    g: &Graph,
    ordering: &EliminationOrdering,
) -> Result<Vec<VertexSet>, ChordalError> {
    if ordering.len() != g.n() {
        return Err(ChordalError::InvalidOrdering);
    }
    if zero_fill_in_check(g, ordering).is_some() {
        return Err(ChordalError::InvalidOrdering);
    }
    let n = g.n();
    let mut later_count = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    for v in 0..n {
        let pos_v = ordering.position(v);
        let mut best: Option<usize> = None;
        let mut count = 0;
        for &w in g.neighbors(v) {
            if ordering.position(w) > pos_v {
                count += 1;
                match best {
                    None => best = Some(w),
                    Some(u) if ordering.position(w) < ordering.position(u) => best = Some(w),
                    _ => {}
                }
            }
        }
        later_count[v] = count;
        if let Some(u) = best {
            parent[v] = u;
        }
    }
    // The candidate clique of v is swallowed by the one of u whenever u's
    // candidate is exactly {v} plus v's candidate.
    let mut maximal = vec![true; n];
    for u in 0..n {
        if parent[u] != usize::MAX && later_count[u] == later_count[parent[u]] + 1 {
            maximal[parent[u]] = false;
        }
    }
    let mut cliques = Vec::new();
    for (v, _) in maximal.iter().enumerate().filter(|&(_, &keep)| keep) {
        let pos_v = ordering.position(v);
        let mut members: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| ordering.position(w) > pos_v)
            .collect();
        members.push(v);
        cliques.push(VertexSet::new(members));
    }
    cliques.sort();
    Ok(cliques)
}

/// Clique discovery along the MCS visit order: cliques in discovery order
/// plus tree edges (child, parent, separator).  Assumes `g` is connected
/// chordal and `ordering` came from `mcs_order`.
struct McsCliqueTree {
    cliques: Vec<Vec<usize>>,
    edges: Vec<(usize, usize, Vec<usize>)>,
}

fn mcs_clique_tree(g: &Graph, ordering: &EliminationOrdering) -> McsCliqueTree {
    let n = g.n();
    let visit: Vec<usize> = ordering.order().iter().rev().copied().collect();
    let mut visit_pos = vec![usize::MAX; n];
    for (i, &v) in visit.iter().enumerate() {
        visit_pos[v] = i;
    }
    let mut clique_of = vec![usize::MAX; n];
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut edges = Vec::new();
    let mut prev_size = 0usize;
    for (i, &v) in visit.iter().enumerate() {
        let earlier: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| visit_pos[w] < i)
            .collect();
        let earlier_len = earlier.len();
        if i == 0 {
            cliques.push(vec![v]);
            clique_of[v] = 0;
        } else if earlier.len() == prev_size + 1 {
            // The visited neighborhood grew, so v extends the clique of the
            // previously visited vertex.
            let c = clique_of[visit[i - 1]];
            cliques[c].push(v);
            clique_of[v] = c;
        } else {
            // A new clique starts; it hangs off the clique of the most
            // recently visited earlier neighbor, and the shared separator is
            // exactly the visited neighborhood of v.
            let anchor = *earlier
                .iter()
                .max_by_key(|&&w| visit_pos[w])
                .expect("connected graph: every later vertex has a visited neighbor");
            let c = cliques.len();
            let mut members = earlier.clone();
            members.push(v);
            cliques.push(members);
            clique_of[v] = c;
            let mut separator = earlier;
            separator.sort_unstable();
            edges.push((c, clique_of[anchor], separator));
        }
        prev_size = earlier_len;
    }
    for c in &mut cliques {
        c.sort_unstable();
    }
    McsCliqueTree { cliques, edges }
}

/// Tie-breaking strategy for `build_clique_tree_with_strategy`; all three
/// produce valid clique trees of the same graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeStrategy {
    /// Prim-style maximum-weight spanning tree of the clique intersection
    /// graph, ties towards the lowest clique index.
    MaxWeightPrim,
    /// Same, ties towards the highest clique index (useful to exercise the
    /// invariance of separator multiplicities across clique trees).
    MaxWeightPrimHighTie,
    /// Direct construction along the maximum cardinality search; linear and
    /// used automatically for large inputs.
    McsDirect,
}

fn prim_clique_tree(
    cliques: &[VertexSet],
    n: usize,
    high_tie: bool,
) -> Vec<CliqueTreeEdge> {
    let q = cliques.len();
    if q <= 1 {
        return Vec::new();
    }
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in cliques.iter().enumerate() {
        for v in c.iter() {
            containing[v].push(i);
        }
    }
    let mut weight: HashMap<(usize, usize), usize> = HashMap::new();
    for list in &containing {
        for a in 0..list.len() {
            for b in (a + 1)..list.len() {
                *weight.entry((list[a], list[b])).or_insert(0) += 1;
            }
        }
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); q];
    for (&(i, j), &w) in &weight {
        adj[i].push((j, w));
        adj[j].push((i, w));
    }
    let mut in_tree = vec![false; q];
    let mut key = vec![0usize; q];
    let mut parent = vec![usize::MAX; q];
    in_tree[0] = true;
    for &(j, w) in &adj[0] {
        key[j] = w;
        parent[j] = 0;
    }
    let mut edges = Vec::new();
    for _ in 1..q {
        let mut next = usize::MAX;
        for j in 0..q {
            if !in_tree[j] && key[j] > 0 && (next == usize::MAX || key[j] > key[next]) {
                next = j;
            }
        }
        assert!(
            next != usize::MAX,
            "clique intersection graph of a connected chordal graph is connected"
        );
        in_tree[next] = true;
        let p = parent[next];
        edges.push(CliqueTreeEdge {
            a: p.min(next),
            b: p.max(next),
            separator: cliques[p].intersection(&cliques[next]),
        });
        for &(j, w) in &adj[next] {
            if in_tree[j] {
                continue;
            }
            let better = w > key[j]
                || (w == key[j]
                    && parent[j] != usize::MAX
                    && if high_tie { next > parent[j] } else { next < parent[j] });
            if better {
                key[j] = w;
                parent[j] = next;
            }
        }
    }
    edges.sort_by_key(|e| (e.a, e.b));
    edges
}

const PRIM_CLIQUE_LIMIT: usize = 128;

/// Builds a clique tree over the given maximal cliques.  Small inputs use the
/// Prim route on the clique intersection graph; large ones use the direct
/// MCS construction to stay near-linear.  The clique list must match the
/// maximal cliques of `g` (in any order).
pub fn build_clique_tree(g: &Graph, cliques: &[VertexSet]) -> Result<CliqueTree, ChordalError> {
    let strategy = if cliques.len() <= PRIM_CLIQUE_LIMIT {
        TreeStrategy::MaxWeightPrim
    } else {
        TreeStrategy::McsDirect
    };
    build_clique_tree_with_strategy(g, cliques, strategy)
}

pub fn build_clique_tree_with_strategy(
    g: &Graph,
    cliques: &[VertexSet],
    strategy: TreeStrategy,
) -> Result<CliqueTree, ChordalError> {
    if !g.is_connected() {
        return Err(ChordalError::Disconnected);
    }
    let ordering = mcs_order(g);
    if let Some(triple) = zero_fill_in_check(g, &ordering) {
        return Err(ChordalError::NotChordal(find_chordless_cycle(
            g,
            Some(triple),
        )));
    }
    let discovered = mcs_clique_tree(g, &ordering);
    let index_of: HashMap<&[usize], usize> = cliques
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    if index_of.len() != cliques.len() || discovered.cliques.len() != cliques.len() {
        return Err(ChordalError::CliqueSetMismatch);
    }
    let mut remap = vec![usize::MAX; discovered.cliques.len()];
    for (d, members) in discovered.cliques.iter().enumerate() {
        match index_of.get(members.as_slice()) {
            Some(&i) => remap[d] = i,
            None => return Err(ChordalError::CliqueSetMismatch),
        }
    }
    let edges = match strategy {
        TreeStrategy::MaxWeightPrim => prim_clique_tree(cliques, g.n(), false),
        TreeStrategy::MaxWeightPrimHighTie => prim_clique_tree(cliques, g.n(), true),
        TreeStrategy::McsDirect => {
            let mut edges: Vec<CliqueTreeEdge> = discovered
                .edges
                .into_iter()
                .map(|(c, p, sep)| {
                    let (a, b) = (remap[c].min(remap[p]), remap[c].max(remap[p]));
                    CliqueTreeEdge {
                        a,
                        b,
                        separator: VertexSet::from_sorted(sep),
                    }
                })
                .collect();
            edges.sort_by_key(|e| (e.a, e.b));
            edges
        }
    };
    Ok(CliqueTree {
        cliques: cliques.to_vec(),
        edges,
    })
}

/// Groups clique-tree edges by separator.  The resulting multiset of minimal
/// vertex separators does not depend on which clique tree was built.
pub fn separator_table(tree: &CliqueTree) -> SeparatorTable {
    let mut map: BTreeMap<VertexSet, usize> = BTreeMap::new();
    for e in &tree.edges {
        *map.entry(e.separator.clone()).or_insert(0) += 1;
    }
    SeparatorTable {
        entries: map.into_iter().collect(),
    }
}

/// Runs the full pipeline on a connected chordal graph: MCS ordering, the
/// maximal cliques in lexicographic order, a clique tree and the separator
/// table.
pub fn analyze(g: &Graph) -> Result<ChordalAnalysis, ChordalError> {
    if !g.is_connected() {
        return Err(ChordalError::Disconnected);
    }
    let ordering = mcs_order(g);
    if let Some(triple) = zero_fill_in_check(g, &ordering) {
        return Err(ChordalError::NotChordal(find_chordless_cycle(
            g,
            Some(triple),
        )));
    }
    let discovered = mcs_clique_tree(g, &ordering);
    let mut order: Vec<usize> = (0..discovered.cliques.len()).collect();
    order.sort_by(|&a, &b| discovered.cliques[a].cmp(&discovered.cliques[b]));
    let mut rank = vec![0usize; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let cliques: Vec<VertexSet> = order
        .iter()
        .map(|&i| VertexSet::from_sorted(discovered.cliques[i].clone()))
        .collect();
    let mut edges: Vec<CliqueTreeEdge> = discovered
        .edges
        .into_iter()
        .map(|(c, p, sep)| {
            let (a, b) = (rank[c].min(rank[p]), rank[c].max(rank[p]));
            CliqueTreeEdge {
                a,
                b,
                separator: VertexSet::from_sorted(sep),
            }
        })
        .collect();
    edges.sort_by_key(|e| (e.a, e.b));
    let tree = CliqueTree { cliques, edges };
    let table = separator_table(&tree);
    if g.n() >= 2 {
        debug_assert!(
            tree.cliques.iter().map(|c| c.len()).sum::<usize>() < g.n() + g.m(),
            "combined clique size must stay below n + m on chordal graphs"
        );
    }
    Ok(ChordalAnalysis {
        ordering,
        cliques: tree.cliques.clone(),
        tree,
        table,
    })
}
