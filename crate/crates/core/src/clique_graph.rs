//! Graphs whose nodes are cliques: the clique intersection graph, the
//! reduced clique graph (only intersections that separate survive) and the
//! k-line graph (k-cliques adjacent when they share k−1 vertices).
//!
//! Nodes are always stored in lexicographic order and edges sorted, so two
//! values compare equal exactly when they are equal as labelled graphs.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::chordal::{analyze, ChordalError, Chordality};
use crate::graph::{Graph, VertexSet};

/// Default ceiling on k-clique enumeration work.
pub const K_CLIQUE_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueGraphError {
    #[error("k must be at least 2 (got {k})")]
    InvalidK { k: usize },
    #[error("k-clique enumeration exceeded its cap of {cap}")]
    CapExceeded { cap: u64 },
}

/// A graph over vertex sets with weighted edges; the weight of an edge is
/// the size of the intersection of its endpoint sets.  Nodes are kept in
/// lexicographic order and edges as `(i, j, weight)` with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCliqueGraph {
    nodes: Vec<VertexSet>,
    edges: Vec<(usize, usize, usize)>,
}

impl WeightedCliqueGraph {
    /// Canonicalizes: sorts nodes lexicographically, remaps and sorts edges.
    fn canonical(mut nodes: Vec<VertexSet>, edges: Vec<(usize, usize, usize)>) -> Self {
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&a, &b| nodes[a].cmp(&nodes[b]));
        let mut rank = vec![0usize; nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut sorted_nodes = Vec::with_capacity(nodes.len());
        for &old in &order {
            sorted_nodes.push(std::mem::take(&mut nodes[old]));
        }
        let mut edges: Vec<(usize, usize, usize)> = edges
            .into_iter()
            .map(|(i, j, w)| {
                let (a, b) = (rank[i].min(rank[j]), rank[i].max(rank[j]));
                (a, b, w)
            })
            .collect();
        edges.sort_unstable();
        WeightedCliqueGraph {
            nodes: sorted_nodes,
            edges,
        }
    }

    pub fn nodes(&self) -> &[VertexSet] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Index of a node set, if present.
    pub fn node_index(&self, s: &VertexSet) -> Option<usize> {
        self.nodes.binary_search(s).ok()
    }

    /// Weight of the edge between nodes `i` and `j`, if present.
    pub fn edge_weight(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&key))
            .ok()
            .map(|pos| self.edges[pos].2)
    }

    /// Underlying unweighted graph on node indices.
    pub fn skeleton(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(i, j, _)| (i, j)).collect();
        Graph::build(self.nodes.len(), &edges).expect("canonical edges are simple")
    }
}

/// Clique intersection graph: one node per clique, an edge wherever two
/// cliques intersect, weighted by the intersection size.
pub fn clique_intersection_graph(cliques: &[VertexSet]) -> WeightedCliqueGraph {
    let mut edges = Vec::new();
    let max_vertex = cliques
        .iter()
        .flat_map(|c| c.iter().last())
        .max()
        .map_or(0, |v| v + 1);
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); max_vertex];
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
    for ((i, j), w) in weight {
        edges.push((i, j, w));
    }
    WeightedCliqueGraph::canonical(cliques.to_vec(), edges)
}

/// Whether removing `q ∩ q2` from `g` leaves the rest of `q` and the rest of
/// `q2` in different components.  For maximal cliques of a connected chordal
/// graph this is exactly the condition under which `q ∩ q2` is a minimal
/// vertex separator.
pub fn is_separating_pair(g: &Graph, q: &VertexSet, q2: &VertexSet) -> bool {
    let shared = q.intersection(q2);
    if shared.is_empty() {
        return false;
    }
    let a = match q.iter().find(|v| !shared.contains(*v)) {
        Some(v) => v,
        None => return false,
    };
    let b = match q2.iter().find(|v| !shared.contains(*v)) {
        Some(v) => v,
        None => return false,
    };
    // BFS from a towards b in g − shared.
    let n = g.n();
    let mut blocked = vec![false; n];
    for v in shared.iter() {
        blocked[v] = true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[a] = true;
    queue.push_back(a);
    while let Some(u) = queue.pop_front() {
        if u == b {
            return false;
        }
        for &w in g.neighbors(u) {
            if !blocked[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    true
}

/// Exhaustive reduced clique graph: every intersecting pair is tested with
/// [`is_separating_pair`].  Quadratic in the number of cliques times a
/// search of `g`; kept as the reference route.
pub fn reduced_clique_graph_exhaustive(
    g: &Graph,
    cliques: &[VertexSet],
) -> Result<WeightedCliqueGraph, ChordalError> {
    let analysis = analyze(g)?;
    let mut sorted = cliques.to_vec();
    sorted.sort();
    if sorted != analysis.cliques {
        return Err(ChordalError::CliqueSetMismatch);
    }
    let intersection = clique_intersection_graph(cliques);
    let edges: Vec<(usize, usize, usize)> = intersection
        .edges()
        .iter()
        .copied()
        .filter(|&(i, j, _)| {
            is_separating_pair(g, &intersection.nodes()[i], &intersection.nodes()[j])
        })
        .collect();
    Ok(WeightedCliqueGraph::canonical(
        intersection.nodes().to_vec(),
        edges,
    ))
}

/// Reduced clique graph of a connected chordal graph: nodes are the maximal
/// cliques, edges join exactly the pairs whose intersection separates them,
/// weighted by intersection size.
///
/// When every clique has size k+1 and every minimal separator size k, two
/// cliques are joined iff they share k vertices, so the edges can be read
/// off a bucket per k-subset without any separation searches.
pub fn reduced_clique_graph(
    g: &Graph,
    cliques: &[VertexSet],
) -> Result<WeightedCliqueGraph, ChordalError> {
    let analysis = analyze(g)?;
    let mut sorted = cliques.to_vec();
    sorted.sort();
    if sorted != analysis.cliques {
        return Err(ChordalError::CliqueSetMismatch);
    }
    let uniform = cliques.first().map(|c| c.len()).unwrap_or(0);
    let k = uniform.saturating_sub(1);
    let uniform_case = k >= 1
        && cliques.iter().all(|c| c.len() == uniform)
        && analysis.table.entries().iter().all(|(s, _)| s.len() == k);
    if uniform_case {
        let mut edges = Vec::new();
        let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (i, c) in cliques.iter().enumerate() {
            for skip in 0..c.len() {
                let mut key = Vec::with_capacity(k);
                for (pos, v) in c.iter().enumerate() {
                    if pos != skip {
                        key.push(v);
                    }
                }
                buckets.entry(key).or_default().push(i);
            }
        }
        for list in buckets.values() {
            for a in 0..list.len() {
                for b in (a + 1)..list.len() {
                    edges.push((list[a], list[b], k));
                }
            }
        }
        return Ok(WeightedCliqueGraph::canonical(cliques.to_vec(), edges));
    }
    reduced_clique_graph_exhaustive(g, cliques)
}

/// Enumerates all k-cliques of `g`, each as a sorted vertex list.  `work`
/// counts enumeration steps and aborts past `cap`.
fn k_cliques(g: &Graph, k: usize, cap: u64, work: &mut u64) -> Result<Vec<Vec<usize>>, CliqueGraphError> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    // On a connected chordal graph the k-cliques are exactly the k-subsets
    // of maximal cliques, which avoids the general backtracking search.
    if g.is_connected() {
        if let Ok(Chordality::Chordal(ordering)) = crate::chordal::recognize_chordal(g) {
            let cliques = crate::chordal::maximal_cliques(g, &ordering)
                .expect("ordering came from recognition");
            // Advances `subset` to the next k-combination of 0..t.
            fn advance(subset: &mut [usize], t: usize) -> bool {
                let k = subset.len();
                for i in (0..k).rev() {
                    if subset[i] < t - k + i {
                        subset[i] += 1;
                        for j in i + 1..k {
                            subset[j] = subset[j - 1] + 1;
                        }
                        return true;
                    }
                }
                false
            }
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            for c in &cliques {
                if c.len() < k {
                    continue;
                }
                let members = c.as_slice();
                let mut subset: Vec<usize> = (0..k).collect();
                loop {
                    *work += 1;
                    if *work > cap {
                        return Err(CliqueGraphError::CapExceeded { cap });
                    }
                    let candidate: Vec<usize> = subset.iter().map(|&i| members[i]).collect();
                    if seen.insert(candidate.clone()) {
                        found.push(candidate);
                    }
                    if !advance(&mut subset, members.len()) {
                        break;
                    }
                }
            }
            found.sort();
            return Ok(found);
        }
    }
    // General route: extend ascending partial cliques by common neighbors.
    fn extend(
        g: &Graph,
        current: &mut Vec<usize>,
        candidates: &[usize],
        k: usize,
        cap: u64,
        work: &mut u64,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), CliqueGraphError> {
        if current.len() == k {
            out.push(current.clone());
            return Ok(());
        }
        for (idx, &v) in candidates.iter().enumerate() {
            *work += 1;
            if *work > cap {
                return Err(CliqueGraphError::CapExceeded { cap });
            }
            current.push(v);
            let next: Vec<usize> = candidates[idx + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            extend(g, current, &next, k, cap, work, out)?;
            current.pop();
        }
        Ok(())
    }
    let all: Vec<usize> = (0..g.n()).collect();
    extend(g, &mut Vec::new(), &all, k, cap, work, &mut found)?;
    found.sort();
    Ok(found)
}

/// k-line graph: nodes are the k-cliques of `g`, edges join k-cliques that
/// share exactly k−1 vertices, weighted k−1.  Enumeration work is capped at
/// [`K_CLIQUE_CAP`] steps; see [`k_line_graph_capped`] to choose a cap.
pub fn k_line_graph(g: &Graph, k: usize) -> Result<WeightedCliqueGraph, CliqueGraphError> {
    k_line_graph_capped(g, k, K_CLIQUE_CAP)
}

pub fn k_line_graph_capped(
    g: &Graph,
    k: usize,
    cap: u64,
) -> Result<WeightedCliqueGraph, CliqueGraphError> {
    if k < 2 {
        return Err(CliqueGraphError::InvalidK { k });
    }
    let mut work = 0u64;
    let nodes = k_cliques(g, k, cap, &mut work)?;
    // Bucket by (k−1)-subset: two k-cliques are adjacent iff they land in a
    // common bucket, and no pair shares two buckets.
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (i, members) in nodes.iter().enumerate() {
        for skip in 0..k {
            let mut key = Vec::with_capacity(k - 1);
            for (pos, &v) in members.iter().enumerate() {
                if pos != skip {
                    key.push(v);
                }
            }
            buckets.entry(key).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    for list in buckets.values() {
        for a in 0..list.len() {
            for b in (a + 1)..list.len() {
                work += 1;
                if work > cap {
                    return Err(CliqueGraphError::CapExceeded { cap });
                }
                edges.push((list[a], list[b], k - 1));
            }
        }
    }
    let nodes: Vec<VertexSet> = nodes.into_iter().map(VertexSet::from_sorted).collect();
    Ok(WeightedCliqueGraph::canonical(nodes, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec())
    }

    fn t5() -> Graph {
        Graph::build(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn intersection_graph_weights_and_edges() {
        let w = clique_intersection_graph(&[vs(&[0, 1, 2]), vs(&[1, 2, 3]), vs(&[1, 2, 4])]);
        assert_eq!(w.edges(), &[(0, 1, 2), (0, 2, 2), (1, 2, 2)]);
        // Disjoint cliques stay non-adjacent.
        let w = clique_intersection_graph(&[vs(&[0, 1]), vs(&[2, 3])]);
        assert!(w.edges().is_empty());
        // Weight equals the intersection size.
        let w = clique_intersection_graph(&[vs(&[0, 1, 2, 3]), vs(&[2, 3, 4])]);
        assert_eq!(w.edges(), &[(0, 1, 2)]);
    }

    #[test]
    fn canonical_node_order_is_lexicographic() {
        let w = clique_intersection_graph(&[vs(&[1, 2, 4]), vs(&[0, 1, 2]), vs(&[1, 2, 3])]);
        assert_eq!(
            w.nodes(),
            &[vs(&[0, 1, 2]), vs(&[1, 2, 3]), vs(&[1, 2, 4])]
        );
        assert_eq!(w.node_index(&vs(&[1, 2, 3])), Some(1));
        assert_eq!(w.node_index(&vs(&[9])), None);
        assert_eq!(w.edge_weight(2, 0), Some(2));
        let skel = w.skeleton();
        assert_eq!(skel.n(), 3);
        assert_eq!(skel.m(), 3);
    }

    #[test]
    fn separating_pair_detection() {
        let g = t5();
        // {1,2} separates 0 from 3.
        assert!(is_separating_pair(&g, &vs(&[0, 1, 2]), &vs(&[1, 2, 3])));
        // Disjoint cliques never separate.
        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_separating_pair(&p4, &vs(&[0, 1]), &vs(&[2, 3])));
        // Removing the midpoint of a path separates its endpoints.
        assert!(is_separating_pair(&p4, &vs(&[0, 1]), &vs(&[1, 2])));
        // A shared set that a detour bypasses is not separating: cliques
        // {0,1,2} and {1,2,3} share {1,2}, but 0-4-3 survives its removal.
        let detour =
            Graph::build(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (3, 4)]).unwrap();
        assert!(!is_separating_pair(&detour, &vs(&[0, 1, 2]), &vs(&[1, 2, 3])));
    }

    #[test]
    fn reduced_graph_of_t5_is_complete() {
        let g = t5();
        let cliques = analyze(&g).unwrap().cliques;
        let r = reduced_clique_graph(&g, &cliques).unwrap();
        assert_eq!(r.nodes().len(), 3);
        assert_eq!(r.edges(), &[(0, 1, 2), (0, 2, 2), (1, 2, 2)]);
        assert_eq!(r, reduced_clique_graph_exhaustive(&g, &cliques).unwrap());
    }

    #[test]
    fn reduced_graph_drops_non_separating_intersections() {
        // Cliques {0,1,2}, {1,2,3}, {3,4}: the first and second share a
        // separator, the second and third share {3}, the outer pair shares
        // nothing — a path, not a triangle.
        let g = Graph::build(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let cliques = analyze(&g).unwrap().cliques;
        let r = reduced_clique_graph(&g, &cliques).unwrap();
        assert_eq!(
            r.nodes(),
            &[vs(&[0, 1, 2]), vs(&[1, 2, 3]), vs(&[3, 4])]
        );
        assert_eq!(r.edges(), &[(0, 1, 2), (1, 2, 1)]);
    }

    #[test]
    fn reduced_graph_validates_input() {
        let g = t5();
        let wrong = vec![vs(&[0, 1, 2]), vs(&[1, 2, 3])];
        assert_eq!(
            reduced_clique_graph(&g, &wrong),
            Err(ChordalError::CliqueSetMismatch)
        );
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(
            reduced_clique_graph(&c4, &[]),
            Err(ChordalError::NotChordal(_))
        ));
    }

    #[test]
    fn k_line_graph_of_small_graphs() {
        // Triangle, k = 2: nodes are the edges, each pair shares a vertex.
        let tri = Graph::complete(3);
        let l = k_line_graph(&tri, 2).unwrap();
        assert_eq!(l.nodes().len(), 3);
        assert_eq!(l.edges().len(), 3);

        // Path, k = 2: two edges sharing vertex 1.
        let path = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let l = k_line_graph(&path, 2).unwrap();
        assert_eq!(l.nodes(), &[vs(&[0, 1]), vs(&[1, 2])]);
        assert_eq!(l.edges(), &[(0, 1, 1)]);

        // T5, k = 3: three triangles pairwise sharing the edge {1,2}.
        let l = k_line_graph(&t5(), 3).unwrap();
        assert_eq!(
            l.nodes(),
            &[vs(&[0, 1, 2]), vs(&[1, 2, 3]), vs(&[1, 2, 4])]
        );
        assert_eq!(l.edges(), &[(0, 1, 2), (0, 2, 2), (1, 2, 2)]);
    }

    #[test]
    fn k_line_graph_on_non_chordal_input() {
        // C4 has four edges and no triangles; ℓ₂ is again a 4-cycle.
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let l = k_line_graph(&c4, 2).unwrap();
        assert_eq!(l.nodes().len(), 4);
        assert_eq!(l.edges().len(), 4);
        assert!(k_line_graph(&c4, 3).unwrap().nodes().is_empty());
    }

    #[test]
    fn k_line_graph_guards() {
        assert_eq!(
            k_line_graph(&Graph::complete(3), 1),
            Err(CliqueGraphError::InvalidK { k: 1 })
        );
        assert_eq!(
            k_line_graph_capped(&Graph::complete(8), 4, 10),
            Err(CliqueGraphError::CapExceeded { cap: 10 })
        );
    }
}
