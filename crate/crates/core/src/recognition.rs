//! Recognition of structured graph classes.
//!
//! * k-trees: connected chordal graphs whose maximal cliques all have size
//!   k+1 and whose minimal separators all have size k.  Acceptance comes
//!   with a build certificate that can be replayed step by step.
//! * block graphs: connected graphs whose biconnected components are all
//!   complete, found with Tarjan's articulation-point search.
//!
//! A k-tree is also characterised by its clique-level graphs: the reduced
//! clique graph coincides with the (k+1)-line graph exactly on k-trees,
//! which [`cr_equals_k_line`] checks directly.

use thiserror::Error;

use crate::chordal::{analyze, ChordalError};
use crate::clique_graph::{k_line_graph_capped, reduced_clique_graph};
use crate::graph::{Graph, GraphError, VertexSet};

/// Reasons a graph fails k-tree recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KTreeRejection {
    NotConnected,
    NotChordal { witness_cycle: Vec<usize> },
    /// Maximal cliques do not all have the same size.
    CliqueSizeMismatch { sizes: Vec<usize> },
    /// Some minimal separator has the wrong size for the clique size found.
    SeparatorSizeMismatch { expected: usize, found: VertexSet },
}

/// Step-by-step witness that a graph is a k-tree: start from the base
/// clique, then attach each vertex to a k-clique among the vertices already
/// present.  Additions are listed in construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTreeCertificate {
    pub k: usize,
    pub base: VertexSet,
    pub additions: Vec<(usize, VertexSet)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("base clique has {found} vertices, expected k+1 = {expected}")]
    WrongBaseSize { expected: usize, found: usize },
    #[error("attachment set of vertex {v} has {found} vertices, expected k = {expected}")]
    WrongAttachmentSize { v: usize, expected: usize, found: usize },
    #[error("vertex {v} added twice or attached to a vertex not yet present")]
    UnknownOrRepeatedVertex { v: usize },
    #[error("attachment set of vertex {v} is not a clique at that point")]
    AttachmentNotClique { v: usize },
    #[error("replayed graph is malformed: {0}")]
    Malformed(#[from] GraphError),
}

impl KTreeCertificate {
    /// Rebuilds the graph the certificate describes, validating every step:
    /// the base must be a (k+1)-set and every attachment a k-clique among
    /// the vertices present so far.  Vertex ids are kept as given.
    pub fn replay(&self) -> Result<Graph, CertificateError> {
        let k = self.k;
        if self.base.len() != k + 1 {
            return Err(CertificateError::WrongBaseSize {
                expected: k + 1,
                found: self.base.len(),
            });
        }
        let n = self.base.len() + self.additions.len();
        let mut present = vec![false; n];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut adjacent = vec![false; n * n];
        let connect = |edges: &mut Vec<(usize, usize)>,
                           adjacent: &mut Vec<bool>,
                           u: usize,
                           v: usize| {
            edges.push((u, v));
            adjacent[u * n + v] = true;
            adjacent[v * n + u] = true;
        };
        for v in self.base.iter() {
            if v >= n || present[v] {
                return Err(CertificateError::UnknownOrRepeatedVertex { v });
            }
            present[v] = true;
        }
        let base: Vec<usize> = self.base.iter().collect();
        for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                connect(&mut edges, &mut adjacent, base[i], base[j]);
            }
        }
        for (v, attach) in &self.additions {
            let v = *v;
            if attach.len() != k {
                return Err(CertificateError::WrongAttachmentSize {
                    v,
                    expected: k,
                    found: attach.len(),
                });
            }
            if v >= n || present[v] {
                return Err(CertificateError::UnknownOrRepeatedVertex { v });
            }
            for u in attach.iter() {
                if u >= n || !present[u] {
                    return Err(CertificateError::UnknownOrRepeatedVertex { v });
                }
            }
            let members: Vec<usize> = attach.iter().collect();
            for i in 0..members.len() {
                for j in (i + 1)..members.len() {
                    if !adjacent[members[i] * n + members[j]] {
                        return Err(CertificateError::AttachmentNotClique { v });
                    }
                }
            }
            present[v] = true;
            for &u in &members {
                connect(&mut edges, &mut adjacent, u, v);
            }
        }
        Ok(Graph::build(n, &edges)?)
    }
}

/// Outcome of k-tree recognition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KTreeDecision {
    Accepted {
        k: usize,
        certificate: KTreeCertificate,
    },
    Rejected(KTreeRejection),
}

/// Recognizes k-trees: after chordal analysis, all maximal cliques must
/// share one size k+1 and all minimal separators the size k.  The accepted
/// value of k is forced by the clique size.  K₁ is accepted as the 0-tree,
/// and every complete graph as an (n−1)-tree.
pub fn recognize_k_tree(g: &Graph) -> KTreeDecision {
    let analysis = match analyze(g) {
        Ok(a) => a,
        Err(ChordalError::Disconnected) => {
            return KTreeDecision::Rejected(KTreeRejection::NotConnected)
        }
        Err(ChordalError::NotChordal(cycle)) => {
            return KTreeDecision::Rejected(KTreeRejection::NotChordal {
                witness_cycle: cycle,
            })
        }
        Err(e) => unreachable!("analysis of an owned graph cannot fail with {e}"),
    };
    let sizes: Vec<usize> = analysis.cliques.iter().map(|c| c.len()).collect();
    let first = sizes[0];
    if sizes.iter().any(|&s| s != first) {
        return KTreeDecision::Rejected(KTreeRejection::CliqueSizeMismatch { sizes });
    }
    let k = first - 1;
    for (sep, _) in analysis.table.entries() {
        if sep.len() != k {
            return KTreeDecision::Rejected(KTreeRejection::SeparatorSizeMismatch {
                expected: k,
                found: sep.clone(),
            });
        }
    }
    // Certificate straight off the elimination ordering: the last k+1
    // vertices are the base; every earlier vertex attaches to its later
    // neighborhood, in reverse elimination order.
    let order = analysis.ordering.order();
    let n = g.n();
    let base = VertexSet::new(order[n - (k + 1)..].to_vec());
    let mut additions = Vec::with_capacity(n - (k + 1));
    for i in (0..n - (k + 1)).rev() {
        let v = order[i];
        let attach: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| analysis.ordering.position(w) > i)
            .collect();
        debug_assert_eq!(attach.len(), k);
        additions.push((v, VertexSet::new(attach)));
    }
    KTreeDecision::Accepted {
        k,
        certificate: KTreeCertificate {
            k,
            base,
            additions,
        },
    }
}

/// Reasons a graph fails block-graph recognition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockRejection {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("biconnected component {block} is missing edge ({}, {})", missing.0, missing.1)]
    IncompleteBlock {
        block: VertexSet,
        missing: (usize, usize),
    },
}

/// Blocks (vertex sets of the biconnected components, lexicographic) and cut
/// vertices of a connected block graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
}

/// Biconnected components as edge lists, plus the cut vertices, via an
/// iterative Tarjan depth-first search.  `g` must be connected (checked by
/// the caller); an isolated vertex yields no blocks.
fn biconnected_components(g: &Graph) -> (Vec<Vec<(usize, usize)>>, Vec<bool>) {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut blocks: Vec<Vec<(usize, usize)>> = Vec::new();
    if n == 0 {
        return (blocks, is_cut);
    }
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // Frames: (vertex, parent, next adjacency index to scan).
    let mut frames: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = timer;
    low[0] = timer;
    timer += 1;
    let mut root_blocks = 0usize;
    while let Some(&mut (v, parent, ref mut idx)) = frames.last_mut() {
        if *idx < g.degree(v) {
            let w = g.neighbors(v)[*idx];
            *idx += 1;
            if w == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                edge_stack.push((v, w));
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                frames.push((w, v, 0));
            } else if disc[w] < disc[v] {
                // back edge, recorded once from the deeper endpoint
                edge_stack.push((v, w));
                low[v] = low[v].min(disc[w]);
            }
        } else {
            frames.pop();
            if let Some(&mut (p, _, _)) = frames.last_mut() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    // p separates v's subtree: everything stacked since the
                    // tree edge (p, v) forms one biconnected component.
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == (p, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                    if p == 0 {
                        root_blocks += 1;
                    } else {
                        is_cut[p] = true;
                    }
                }
            }
        }
    }
    if root_blocks >= 2 {
        is_cut[0] = true;
    }
    (blocks, is_cut)
}

/// Recognizes connected block graphs: every biconnected component must be a
/// complete graph.  On failure the offending block is returned together
/// with one missing edge.
pub fn recognize_block_graph(g: &Graph) -> Result<BlockDecomposition, BlockRejection> {
    if !g.is_connected() {
        return Err(BlockRejection::Disconnected);
    }
    let (edge_blocks, is_cut) = biconnected_components(g);
    let mut blocks: Vec<VertexSet> = edge_blocks
        .iter()
        .map(|edges| {
            let mut members: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            members.sort_unstable();
            members.dedup();
            VertexSet::from_sorted(members)
        })
        .collect();
    let edge_counts: Vec<usize> = edge_blocks.iter().map(|e| e.len()).collect();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| blocks[a].cmp(&blocks[b]));
    for &i in &order {
        let b = blocks[i].len();
        if edge_counts[i] == b * (b - 1) / 2 {
            continue;
        }
        // Find a concrete missing pair inside the block.
        let members: Vec<usize> = blocks[i].iter().collect();
        for x in 0..members.len() {
            for y in (x + 1)..members.len() {
                if !g.has_edge(members[x], members[y]) {
                    return Err(BlockRejection::IncompleteBlock {
                        block: blocks[i].clone(),
                        missing: (members[x], members[y]),
                    });
                }
            }
        }
        unreachable!("edge count below binomial implies a missing pair");
    }
    blocks.sort();
    let cut_vertices: VertexSet = (0..g.n()).filter(|&v| is_cut[v]).collect();
    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
    })
}

/// Largest number of blocks meeting at one vertex; equivalently the largest
/// p such that the graph has an induced star K_{1,p}.  Zero for K₁.
pub fn max_claw_size(g: &Graph) -> Result<usize, BlockRejection> {
    let decomposition = recognize_block_graph(g)?;
    let mut at_vertex = vec![0usize; g.n()];
    for b in &decomposition.blocks {
        for v in b.iter() {
            at_vertex[v] += 1;
        }
    }
    Ok(at_vertex.into_iter().max().unwrap_or(0))
}

/// Whether the reduced clique graph equals the (ω)-line graph of `g`, where
/// ω is the size of the largest clique.  The two coincide exactly when `g`
/// is a k-tree (k = ω−1), so this cross-checks [`recognize_k_tree`] by an
/// entirely different route.  Both sides are labelled graphs over vertex
/// sets, and equality is literal.
pub fn cr_equals_k_line(g: &Graph) -> Result<bool, ChordalError> {
    let analysis = analyze(g)?;
    let omega = analysis.clique_number();
    if omega < 2 {
        // A single vertex: both sides are the one-node graph on {0}.
        return Ok(true);
    }
    let reduced = reduced_clique_graph(g, &analysis.cliques)?;
    // ω-subsets of maximal cliques are just the maximum cliques themselves,
    // so the enumeration inside the line graph stays linear here.
    let line = k_line_graph_capped(g, omega, u64::MAX)
        .expect("enumerating maximum cliques of a chordal graph cannot blow the cap");
    Ok(reduced == line)
}

/// Canonical string code of the block-cut structure: the block-cut tree is
/// rooted at its centroid(s) and serialized bottom-up with sorted subtree
/// codes, blocks labelled by their size.  Two connected block graphs get
/// the same code iff they are isomorphic.
pub fn canonical_block_code(g: &Graph) -> Result<String, BlockRejection> {
    let decomposition = recognize_block_graph(g)?;
    let blocks = &decomposition.blocks;
    if blocks.is_empty() {
        return Ok("v".to_string());
    }
    let cuts: Vec<usize> = decomposition.cut_vertices.iter().collect();
    let cut_index: std::collections::HashMap<usize, usize> =
        cuts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // Tree nodes: blocks 0..t, then cut vertices t..t+c.
    let t = blocks.len();
    let total = t + cuts.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (b, block) in blocks.iter().enumerate() {
        for v in block.iter() {
            if let Some(&c) = cut_index.get(&v) {
                adj[b].push(t + c);
                adj[t + c].push(b);
            }
        }
    }
    // Subtree sizes from an arbitrary root, then centroids: the nodes whose
    // largest remaining component is minimal.
    let centroids = {
        let mut order = Vec::with_capacity(total);
        let mut parent = vec![usize::MAX; total];
        let mut stack = vec![0usize];
        let mut seen = vec![false; total];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut size = vec![1usize; total];
        for &v in order.iter().rev() {
            if parent[v] != usize::MAX {
                size[parent[v]] += size[v];
            }
        }
        let mut best = usize::MAX;
        let mut centroids = Vec::new();
        for v in 0..total {
            let mut largest = total - size[v];
            for &w in &adj[v] {
                if parent[w] == v {
                    largest = largest.max(size[w]);
                }
            }
            if largest < best {
                best = largest;
                centroids = vec![v];
            } else if largest == best {
                centroids.push(v);
            }
        }
        centroids
    };
    fn code_at(
        v: usize,
        parent: usize,
        adj: &[Vec<usize>],
        label: &dyn Fn(usize) -> String,
    ) -> String {
        let mut children: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| code_at(w, v, adj, label))
            .collect();
        children.sort();
        format!("{}({})", label(v), children.join(""))
    }
    let label = |v: usize| -> String {
        if v < t {
            format!("B{}", blocks[v].len())
        } else {
            "C".to_string()
        }
    };
    let code = centroids
        .iter()
        .map(|&c| code_at(c, usize::MAX, &adj, &label))
        .min()
        .expect("a non-empty tree has a centroid");
    Ok(code)
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

    fn bowtie() -> Graph {
        Graph::build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn accepts_k_trees_with_replayable_certificates() {
        for (g, expected_k) in [
            (t5(), 2),
            (Graph::complete(4), 3),
            (Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(), 1),
            (Graph::build(1, &[]).unwrap(), 0),
        ] {
            match recognize_k_tree(&g) {
                KTreeDecision::Accepted { k, certificate } => {
                    assert_eq!(k, expected_k);
                    assert_eq!(certificate.replay().unwrap(), g);
                }
                KTreeDecision::Rejected(r) => panic!("expected {expected_k}-tree, got {r:?}"),
            }
        }
    }

    #[test]
    fn rejections_name_the_reason() {
        assert_eq!(
            recognize_k_tree(&Graph::build(4, &[(0, 1), (2, 3)]).unwrap()),
            KTreeDecision::Rejected(KTreeRejection::NotConnected)
        );
        let c4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(
            recognize_k_tree(&c4),
            KTreeDecision::Rejected(KTreeRejection::NotChordal { .. })
        ));
        // T5 plus a pendant vertex: one clique of size 2 among triangles.
        let mut edges = vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (1, 4), (2, 4)];
        edges.push((0, 5));
        let pendant = Graph::build(6, &edges).unwrap();
        assert!(matches!(
            recognize_k_tree(&pendant),
            KTreeDecision::Rejected(KTreeRejection::CliqueSizeMismatch { .. })
        ));
        // Bowtie: uniform triangles but the separator {2} is too small.
        assert_eq!(
            recognize_k_tree(&bowtie()),
            KTreeDecision::Rejected(KTreeRejection::SeparatorSizeMismatch {
                expected: 2,
                found: vs(&[2]),
            })
        );
    }

    #[test]
    fn certificate_replay_rejects_tampering() {
        let KTreeDecision::Accepted { certificate, .. } = recognize_k_tree(&t5()) else {
            panic!("T5 is a 2-tree");
        };
        let mut wrong_attach = certificate.clone();
        let last = wrong_attach.additions.len() - 1;
        wrong_attach.additions[last].1 = vs(&[0]);
        assert!(matches!(
            wrong_attach.replay(),
            Err(CertificateError::WrongAttachmentSize { .. })
        ));
        let mut wrong_base = certificate.clone();
        wrong_base.base = vs(&[0, 1]);
        assert!(matches!(
            wrong_base.replay(),
            Err(CertificateError::WrongBaseSize { .. })
        ));
    }

    #[test]
    fn block_decomposition_of_fixed_graphs() {
        let d = recognize_block_graph(&bowtie()).unwrap();
        assert_eq!(d.blocks, vec![vs(&[0, 1, 2]), vs(&[2, 3, 4])]);
        assert_eq!(d.cut_vertices, vs(&[2]));

        let d = recognize_block_graph(&Graph::complete(4)).unwrap();
        assert_eq!(d.blocks, vec![vs(&[0, 1, 2, 3])]);
        assert!(d.cut_vertices.is_empty());

        let p4 = Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = recognize_block_graph(&p4).unwrap();
        assert_eq!(d.blocks, vec![vs(&[0, 1]), vs(&[1, 2]), vs(&[2, 3])]);
        assert_eq!(d.cut_vertices, vs(&[1, 2]));

        let single = Graph::build(1, &[]).unwrap();
        let d = recognize_block_graph(&single).unwrap();
        assert!(d.blocks.is_empty());
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn incomplete_blocks_are_rejected_with_a_missing_edge() {
        // Four-cycle with one chord: a single 2-connected block missing the
        // other diagonal.
        let diamond = Graph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(
            recognize_block_graph(&diamond),
            Err(BlockRejection::IncompleteBlock {
                block: vs(&[0, 1, 2, 3]),
                missing: (1, 3),
            })
        );
        assert_eq!(
            recognize_block_graph(&Graph::build(2, &[]).unwrap()),
            Err(BlockRejection::Disconnected)
        );
    }

    #[test]
    fn claw_sizes() {
        assert_eq!(max_claw_size(&bowtie()).unwrap(), 2);
        let star = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(max_claw_size(&star).unwrap(), 3);
        assert_eq!(max_claw_size(&Graph::complete(4)).unwrap(), 1);
        assert_eq!(max_claw_size(&Graph::build(1, &[]).unwrap()).unwrap(), 0);
    }

    #[test]
    fn clique_level_characterisation_agrees_with_recognition() {
        for g in [
            t5(),
            Graph::complete(4),
            Graph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
            Graph::build(1, &[]).unwrap(),
        ] {
            assert!(cr_equals_k_line(&g).unwrap(), "k-tree must pass: {g:?}");
        }
        // The bowtie is chordal but not a 2-tree: C_r is a path of triangles
        // while the 3-line graph has no edge between its two triangles.
        assert!(!cr_equals_k_line(&bowtie()).unwrap());
    }

    #[test]
    fn block_codes_are_isomorphism_invariants() {
        let code = canonical_block_code(&bowtie()).unwrap();
        // Same shape, different labelling: triangles {0,2,4} and {1,3,4}.
        let relabelled =
            Graph::build(5, &[(0, 2), (0, 4), (2, 4), (1, 3), (1, 4), (3, 4)]).unwrap();
        assert_eq!(code, canonical_block_code(&relabelled).unwrap());
        // A path of two edges has the same block sizes but a different tree.
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_ne!(code, canonical_block_code(&p3).unwrap());
        assert_eq!(canonical_block_code(&Graph::build(1, &[]).unwrap()).unwrap(), "v");
    }
}
