//! Seeded generators for the two structured families, plus the expansion of
//! a block graph into a k-tree whose clique-level structure mirrors it.
//!
//! Randomness comes from a small hand-rolled SplitMix64 so that a seed
//! produces the same graph on every platform; the standard library has no
//! seedable generator and the output here is part of the library's
//! reproducibility contract.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::recognition::{
    recognize_block_graph, BlockDecomposition, BlockRejection, KTreeCertificate,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("k must be at least 1 (got {k})")]
    KTooSmall { k: usize },
    #[error("n = {n} is too small for a {k}-tree; need at least k+1 = {}", k + 1)]
    TooFewVertices { n: usize, k: usize },
    #[error("block sizes must be at least 2 (got {size})")]
    BlockTooSmall { size: usize },
    #[error("shape bias must lie in [0, 1] (got {bias})")]
    BiasOutOfRange { bias: f64 },
    #[error("input is not a connected block graph: {0}")]
    NotBlockGraph(BlockRejection),
}

/// Parameters for the seeded generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    /// Tree width for k-trees; maximum block size for block graphs.
    pub k: usize,
    /// 0.0 drives the generator towards paths/chains, 1.0 towards stars:
    /// the probability of attaching at the original base instead of the
    /// most recent attachment point.
    pub shape_bias: f64,
}

/// SplitMix64: the 64-bit finalizer of Steele, Lea and Flood.  Tiny state,
/// full 2⁶⁴ period, and identical output everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in 0..upper via the multiply-shift reduction.
    pub fn gen_index(&mut self, upper: usize) -> usize {
        debug_assert!(upper >= 1);
        ((u128::from(self.next_u64()) * upper as u128) >> 64) as usize
    }
}

fn check_bias(bias: f64) -> Result<(), GenError> {
    if !(0.0..=1.0).contains(&bias) {
        return Err(GenError::BiasOutOfRange { bias });
    }
    Ok(())
}

/// Seeded k-tree: start from K_{k+1} and attach each new vertex to a
/// k-clique.  With probability `shape_bias` the attachment set is the fixed
/// base k-subset {0..k−1} (a star of cliques); otherwise it is the most
/// recent clique minus its smallest vertex (a path of cliques).  Returns
/// the graph together with the construction certificate.
pub fn random_k_tree(spec: &GenSpec) -> Result<(Graph, KTreeCertificate), GenError> {
    if spec.k == 0 {
        return Err(GenError::KTooSmall { k: spec.k });
    }
    if spec.n < spec.k + 1 {
        return Err(GenError::TooFewVertices {
            n: spec.n,
            k: spec.k,
        });
    }
    check_bias(spec.shape_bias)?;
    let k = spec.k;
    let mut rng = SplitMix64::new(spec.seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..=k {
        for j in (i + 1)..=k {
            edges.push((i, j));
        }
    }
    let star_attach: Vec<usize> = (0..k).collect();
    let mut last_clique: Vec<usize> = (0..=k).collect();
    let mut additions = Vec::with_capacity(spec.n - (k + 1));
    for v in (k + 1)..spec.n {
        let attach: Vec<usize> = if rng.next_f64() < spec.shape_bias {
            star_attach.clone()
        } else {
            last_clique[1..].to_vec()
        };
        for &u in &attach {
            edges.push((u, v));
        }
        let mut clique = attach.clone();
        clique.push(v);
        additions.push((v, VertexSet::from_sorted(attach)));
        last_clique = clique;
    }
    let g = Graph::build(spec.n, &edges).expect("construction adds each edge once");
    let certificate = KTreeCertificate {
        k,
        base: VertexSet::from_sorted((0..=k).collect()),
        additions,
    };
    Ok((g, certificate))
}

/// Appends one complete block of the given size at `anchor`, using the next
/// `size − 1` fresh vertex ids.
fn push_block(
    anchor: usize,
    size: usize,
    next: &mut usize,
    edges: &mut Vec<(usize, usize)>,
    blocks: &mut Vec<VertexSet>,
) {
    let mut members = vec![anchor];
    for _ in 0..size - 1 {
        members.push(*next);
        *next += 1;
    }
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            edges.push((members[i], members[j]));
        }
    }
    blocks.push(VertexSet::from_sorted(members));
}

fn assemble_block_graph(
    n: usize,
    blocks: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
) -> (Graph, BlockDecomposition) {
    let g = Graph::build(n, &edges).expect("blocks meet only at anchors");
    let mut blocks = blocks;
    blocks.sort();
    let mut in_blocks = vec![0usize; n];
    for b in &blocks {
        for v in b.iter() {
            in_blocks[v] += 1;
        }
    }
    let cut_vertices: VertexSet = (0..n).filter(|&v| in_blocks[v] >= 2).collect();
    let decomposition = BlockDecomposition {
        blocks,
        cut_vertices,
    };
    debug_assert_eq!(
        recognize_block_graph(&g).as_ref(),
        Ok(&decomposition),
        "generated decomposition must match recognition"
    );
    (g, decomposition)
}

/// Seeded connected block graph on `n` vertices with block sizes drawn from
/// 2..=max(k, 2).  With probability `shape_bias` a new block is anchored at
/// vertex 0, otherwise at a uniformly random existing vertex.  Returns the
/// graph and its block decomposition.
pub fn random_block_graph(spec: &GenSpec) -> Result<(Graph, BlockDecomposition), GenError> {
    check_bias(spec.shape_bias)?;
    let n = spec.n.max(1);
    let max_block = spec.k.max(2);
    let mut rng = SplitMix64::new(spec.seed);
    let mut edges = Vec::new();
    let mut blocks = Vec::new();
    let mut built = 1usize; // vertex 0 always exists
    while built < n {
        let spare = n - built;
        let size = (2 + rng.gen_index(max_block - 1)).min(spare + 1);
        let anchor = if rng.next_f64() < spec.shape_bias {
            0
        } else {
            rng.gen_index(built)
        };
        push_block(anchor, size, &mut built, &mut edges, &mut blocks);
    }
    Ok(assemble_block_graph(n, blocks, edges))
}

/// Connected block graph with exactly the given block sizes, attached in
/// order: each block after the first is anchored either at vertex 0 (with
/// probability `shape_bias`) or at a uniformly random existing vertex.
/// An empty size list yields K₁.
pub fn block_graph_from_sizes(
    seed: u64,
    sizes: &[usize],
    shape_bias: f64,
) -> Result<(Graph, BlockDecomposition), GenError> {
    check_bias(shape_bias)?;
    if let Some(&bad) = sizes.iter().find(|&&s| s < 2) {
        return Err(GenError::BlockTooSmall { size: bad });
    }
    let n = 1 + sizes.iter().map(|s| s - 1).sum::<usize>();
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    let mut blocks = Vec::new();
    let mut built = 1usize;
    for &size in sizes {
        let anchor = if rng.next_f64() < shape_bias {
            0
        } else {
            rng.gen_index(built)
        };
        push_block(anchor, size, &mut built, &mut edges, &mut blocks);
    }
    Ok(assemble_block_graph(n, blocks, edges))
}

/// Expands a connected block graph `h` into a k-tree `g` whose cliques play
/// the roles of the vertices of `h`: one (k+1)-clique per vertex, glued so
/// that cliques of adjacent vertices share k vertices, with k the larger of
/// 2 and the maximum number of blocks at one vertex of `h`.  Walking the
/// blocks of `h`, every vertex of a block is assigned a clique that differs
/// from the block's shared k-set in one fresh element; distinct blocks at a
/// vertex consume distinct removal choices, which is possible exactly
/// because k is at least the claw size.
pub fn block_graph_to_k_tree(h: &Graph) -> Result<(Graph, usize), GenError> {
    let decomposition = recognize_block_graph(h).map_err(GenError::NotBlockGraph)?;
    let claw = {
        let mut at_vertex = vec![0usize; h.n()];
        for b in &decomposition.blocks {
            for v in b.iter() {
                at_vertex[v] += 1;
            }
        }
        at_vertex.into_iter().max().unwrap_or(0)
    };
    let k = claw.max(2);
    // Clique of the first-seen vertex seeds the construction.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..=k {
        for j in (i + 1)..=k {
            edges.push((i, j));
        }
    }
    if decomposition.blocks.is_empty() {
        // K₁ expands to the bare base clique.
        return Ok((Graph::complete(k + 1), k));
    }
    let mut clique_of: Vec<Option<Vec<usize>>> = vec![None; h.n()];
    let mut used_removals: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    let mut next_vertex = k + 1;
    let blocks = &decomposition.blocks;
    let mut blocks_at: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (i, b) in blocks.iter().enumerate() {
        for v in b.iter() {
            blocks_at[v].push(i);
        }
    }
    let mut block_seen = vec![false; blocks.len()];
    // Start at the lexicographically first block, entered at its lowest
    // vertex, whose clique is the base.
    let root_vertex = blocks[0].iter().next().expect("blocks are non-empty");
    clique_of[root_vertex] = Some((0..=k).collect());
    let mut queue = std::collections::VecDeque::new();
    block_seen[0] = true;
    queue.push_back((0usize, root_vertex));
    while let Some((b, entry)) = queue.pop_front() {
        let entry_clique = clique_of[entry]
            .clone()
            .expect("entry vertex was assigned before enqueueing");
        // Shared k-set of this block: the entry clique minus its smallest
        // element not yet consumed by another block at `entry`.
        let used = &mut used_removals[entry];
        let removed = *entry_clique
            .iter()
            .find(|x| !used.contains(x))
            .expect("at most claw-many blocks meet a vertex, and the clique has k+1 > claw elements");
        used.push(removed);
        let shared: Vec<usize> = entry_clique
            .iter()
            .copied()
            .filter(|&x| x != removed)
            .collect();
        for u in blocks[b].iter() {
            if u == entry {
                continue;
            }
            let fresh = next_vertex;
            next_vertex += 1;
            for &x in &shared {
                edges.push((x, fresh));
            }
            let mut clique = shared.clone();
            clique.push(fresh);
            clique.sort_unstable();
            clique_of[u] = Some(clique);
            used_removals[u].push(fresh);
            for &b2 in &blocks_at[u] {
                if !block_seen[b2] {
                    block_seen[b2] = true;
                    queue.push_back((b2, u));
                }
            }
        }
        // Other unvisited blocks at the entry vertex.
        for &b2 in &blocks_at[entry] {
            if !block_seen[b2] {
                block_seen[b2] = true;
                queue.push_back((b2, entry));
            }
        }
    }
    let n_g = next_vertex;
    debug_assert_eq!(n_g, k + 1 + (h.n() - 1));
    let g = Graph::build(n_g, &edges).expect("each fresh vertex joins one clique");
    Ok((g, k))
}
