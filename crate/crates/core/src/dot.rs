//! Graphviz rendering, purely presentational.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::certificate::OddExpansionCertificate;
use crate::coloring::ClusteredColoring;
use crate::graph::{edge_key, Graph};

const PALETTE: [&str; 12] = [
    "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c", "#98df8a", "#d62728", "#ff9896",
    "#9467bd", "#c5b0d5", "#8c564b", "#c49c94",
];

pub fn plain(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Each `(hue, side)` pair gets its own fill; hue `h` maps to palette slots
/// `2(h-1)` and `2(h-1)+1`, cycling past twelve colors.
pub fn with_coloring(g: &Graph, coloring: &ClusteredColoring) -> String {
    let mut out = String::from("graph G {\n  node [style=filled];\n");
    for v in g.vertices() {
        let (hue, side) = coloring.colors[v];
        let slot =
            (2 * hue.saturating_sub(1) + usize::from(side.saturating_sub(1))) % PALETTE.len();
        writeln!(
            out,
            "  {v} [fillcolor=\"{}\", label=\"{v}\\n{hue}/{side}\"];",
            PALETTE[slot]
        )
        .unwrap();
    }
    for (u, v) in g.edges() {
        let mono = coloring.colors[u] == coloring.colors[v];
        if mono {
            writeln!(out, "  {u} -- {v} [penwidth=3];").unwrap();
        } else {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// One cluster per tree; tree edges bold, join edges dashed red.
pub fn with_certificate(g: &Graph, cert: &OddExpansionCertificate) -> String {
    let mut out = String::from("graph G {\n  node [style=filled];\n");
    let tree_edges: BTreeSet<_> = cert
        .trees
        .iter()
        .flat_map(|t| t.edges.iter().map(|&(u, v)| edge_key(u, v)))
        .collect();
    let join_edges: BTreeSet<_> = cert
        .joins
        .iter()
        .map(|j| edge_key(j.edge.0, j.edge.1))
        .collect();
    for (i, tree) in cert.trees.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{i} {{\n    label=\"T{i}\";").unwrap();
        for v in tree.vertices.iter() {
            let fill = if cert.coloring.get(&v) == Some(&1) {
                "white"
            } else {
                "gray"
            };
            writeln!(out, "    {v} [fillcolor={fill}];").unwrap();
        }
        out.push_str("  }\n");
    }
    let in_tree: BTreeSet<_> = cert.trees.iter().flat_map(|t| t.vertices.iter()).collect();
    for v in g.vertices().filter(|v| !in_tree.contains(v)) {
        writeln!(out, "  {v} [style=dotted];").unwrap();
    }
    for (u, v) in g.edges() {
        let attrs = if tree_edges.contains(&(u, v)) {
            " [penwidth=3]"
        } else if join_edges.contains(&(u, v)) {
            " [color=red, style=dashed, penwidth=2]"
        } else {
            " [color=gray80]"
        };
        writeln!(out, "  {u} -- {v}{attrs};").unwrap();
    }
    out.push_str("}\n");
    out
}
