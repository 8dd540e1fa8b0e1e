//! Graphviz DOT renderings of derived structures.  Convenience output only:
//! nodes are labelled with their vertex sets, edges with separator weights.

use cliquecount::{BlockDecomposition, CliqueTree, VertexSet, WeightedCliqueGraph};

fn set_label(set: &VertexSet) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn weighted_clique_graph(name: &str, graph: &WeightedCliqueGraph) -> String {
    let mut out = format!("graph {name} {{\n");
    for (i, clique) in graph.nodes().iter().enumerate() {
        out.push_str(&format!("  q{i} [label=\"{}\"];\n", set_label(clique)));
    }
    for &(a, b, w) in graph.edges() {
        out.push_str(&format!("  q{a} -- q{b} [label=\"{w}\"];\n"));
    }
    out.push_str("}\n");
    out
}

pub fn clique_tree(tree: &CliqueTree) -> String {
    let mut out = String::from("graph clique_tree {\n");
    for (i, clique) in tree.cliques.iter().enumerate() {
        out.push_str(&format!("  q{i} [label=\"{}\"];\n", set_label(clique)));
    }
    for edge in &tree.edges {
        out.push_str(&format!(
            "  q{} -- q{} [label=\"{}\"];\n",
            edge.a,
            edge.b,
            set_label(&edge.separator)
        ));
    }
    out.push_str("}\n");
    out
}

pub fn block_cut_tree(decomposition: &BlockDecomposition) -> String {
    let mut out = String::from("graph blocks {\n");
    for (i, block) in decomposition.blocks.iter().enumerate() {
        out.push_str(&format!(
            "  b{i} [shape=box, label=\"{}\"];\n",
            set_label(block)
        ));
    }
    for c in decomposition.cut_vertices.iter() {
        out.push_str(&format!("  c{c} [label=\"{c}\"];\n"));
    }
    for (i, block) in decomposition.blocks.iter().enumerate() {
        for c in decomposition.cut_vertices.iter() {
            if block.contains(c) {
                out.push_str(&format!("  b{i} -- c{c};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
