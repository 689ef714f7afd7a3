use std::fmt::Write;

use super::{FiniteGraph, GraphSpec};

/// DOT rendering of a finite graph, or of a `cols`-column window of a ladder.
/// Boundary vertices are drawn dashed and gray. Output is deterministic.
pub fn export_dot(g: &GraphSpec, cols: u64) -> String {
    match g {
        GraphSpec::Finite(g) => finite_dot(g),
        GraphSpec::Ladder(l) => finite_dot(&l.materialize_window(cols)),
    }
}

fn finite_dot(g: &FiniteGraph) -> String {
    let mut out = String::from("digraph lpg {\n  rankdir=LR;\n");
    for v in g.vertices() {
        let name = g.vertex(v);
        if g.is_boundary(v) {
            writeln!(out, "  \"{name}\" [style=dashed, color=gray];").unwrap();
        } else {
            writeln!(out, "  \"{name}\";").unwrap();
        }
    }
    for e in g.edges() {
        let (s, d) = (g.vertex(e.src), g.vertex(e.dst));
        if e.infinite_family {
            writeln!(out, "  \"{s}\" -> \"{d}\" [label=\"{}\", style=bold, taillabel=\"∞\"];", e.id).unwrap();
        } else {
            writeln!(out, "  \"{s}\" -> \"{d}\" [label=\"{}\"];", e.id).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
