//! Graphviz output. Precolored vertices and edges are drawn red.

use std::fmt::Write as _;

use crate::coloring::PartialTotalColoring;
use crate::discharging::{charge_string, ChargeLedger, Element};
use crate::planar::{PlanarEmbedding, Subgraph};

/// Renders `emb` as an undirected DOT graph. Items of `precolored` are red;
/// colors from `coloring` and charges from `charges` are added to labels.
/// Face, configuration and pot charges go into a separate box node.
pub fn to_dot(
    emb: &PlanarEmbedding,
    precolored: &Subgraph,
    coloring: Option<&PartialTotalColoring>,
    charges: Option<&ChargeLedger>,
) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..emb.vertex_count() {
        let mut label = v.to_string();
        if let Some(c) = coloring.and_then(|c| c.vertex_color(v)) {
            let _ = write!(label, ":{c}");
        }
        if let Some(l) = charges {
            let _ = write!(label, "\\n{}", charge_string(&l.get(Element::Vertex(v))));
        }
        let style = if precolored.contains_vertex(v) {
            ", color=red, fontcolor=red"
        } else {
            ""
        };
        let _ = writeln!(out, "  {v} [label=\"{label}\"{style}];");
    }
    for &e in emb.edges() {
        let mut attrs = Vec::new();
        if let Some(c) = coloring.and_then(|c| c.edge_color(e)) {
            attrs.push(format!("label=\"{c}\""));
        }
        if precolored.contains_edge(e) {
            attrs.push("color=red, fontcolor=red".to_string());
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        } else {
            let _ = writeln!(out, "  {} -- {} [{}];", e.u, e.v, attrs.join(", "));
        }
    }
    if let Some(l) = charges {
        let rows: Vec<String> = l
            .elements()
            .filter(|(e, _)| !matches!(e, Element::Vertex(_)))
            .map(|(e, c)| format!("{e} = {}", charge_string(&c)))
            .collect();
        let _ = writeln!(out, "  charges [shape=box, label=\"{}\\l\"];", rows.join("\\l"));
    }
    out.push_str("}\n");
    out
}
