//! Graphviz output. Splits are drawn as downward triangles, merges as
//! upward ones.

use std::fmt::Write;

use crate::annular::AnnularStrandDiagram;
use crate::graph::{PortGraph, VertexId, VertexKind};
use crate::strand::StrandDiagram;

fn node(out: &mut String, g: &PortGraph, v: VertexId, label: &str) {
    let shape = match g.kind(v) {
        VertexKind::Split => "invtriangle",
        VertexKind::Merge => "triangle",
        VertexKind::Source | VertexKind::Sink => "plaintext",
    };
    let _ = writeln!(out, "  v{v} [shape={shape}, label=\"{label}\"];");
}

fn edges(out: &mut String, g: &PortGraph) {
    for e in g.edge_ids() {
        let edge = g.edge(e);
        let mut attrs = Vec::new();
        match g.kind(edge.tail.0) {
            VertexKind::Split => attrs.push(format!("taillabel=\"{}\"", if edge.tail.1 == 0 { "L" } else { "R" })),
            _ => {}
        }
        if g.kind(edge.head.0) == VertexKind::Merge {
            attrs.push(format!("headlabel=\"{}\"", if edge.head.1 == 0 { "L" } else { "R" }));
        }
        if !edge.crossings.is_empty() {
            attrs.push("style=dashed".into());
            attrs.push(format!("label=\"{}\"", edge.crossings.len()));
        }
        let _ = writeln!(out, "  v{} -> v{} [{}];", edge.tail.0, edge.head.0, attrs.join(", "));
    }
}

pub fn square(d: &StrandDiagram) -> String {
    let g = d.graph();
    let mut out = String::from("digraph strand {\n  rankdir=TB;\n");
    for v in g.vertex_ids() {
        let label = match g.kind(v) {
            VertexKind::Source => format!("in {}", d.sources().iter().position(|&s| s == v).unwrap()),
            VertexKind::Sink => format!("out {}", d.sinks().iter().position(|&s| s == v).unwrap()),
            _ => String::new(),
        };
        node(&mut out, g, v, &label);
    }
    let ids = |vs: &[VertexId]| vs.iter().map(|v| format!("v{v}")).collect::<Vec<_>>().join("; ");
    let _ = writeln!(out, "  {{ rank=source; {}; }}", ids(d.sources()));
    let _ = writeln!(out, "  {{ rank=sink; {}; }}", ids(d.sinks()));
    edges(&mut out, g);
    out.push_str("}\n");
    out
}

/// Each loop is a rank, outermost first; edges crossing the reference ray
/// are dashed and labelled with their crossing count.
pub fn annular(a: &AnnularStrandDiagram) -> String {
    let g = a.graph();
    let mut out = String::from("digraph annular {\n  rankdir=LR;\n");
    for v in g.vertex_ids() {
        node(&mut out, g, v, "");
    }
    if let Ok(loops) = a.classify_loops() {
        for l in loops {
            let _ = write!(out, "  subgraph loop{} {{ rank=same; ", l.radial_index);
            if l.vertices.is_empty() {
                let _ = write!(out, "free{} [shape=circle, label=\"\"]; ", l.radial_index);
            }
            for v in &l.vertices {
                let _ = write!(out, "v{v}; ");
            }
            out.push_str("}\n");
        }
    }
    edges(&mut out, g);
    out.push_str("}\n");
    out
}
