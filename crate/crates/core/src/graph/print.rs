use std::fmt::Write;

use super::{ColumnPattern, GraphSpec, SpineKind};

/// Renders a graph in `.lpg` syntax. Output re-parses to an equal graph when
/// every label is a plain identifier (always true for parsed input).
pub fn print_graph(g: &GraphSpec) -> String {
    let mut out = String::new();
    match g {
        GraphSpec::Finite(g) => {
            for v in g.vertex_labels() {
                writeln!(out, "vertex {v};").unwrap();
            }
            for e in g.edges() {
                let (s, d) = (g.vertex(e.src), g.vertex(e.dst));
                if e.infinite_family {
                    writeln!(out, "infedges {s} -> {d};").unwrap();
                } else {
                    writeln!(out, "edge {}: {s} -> {d};", e.id).unwrap();
                }
            }
        }
        GraphSpec::Ladder(l) => {
            out.push_str("ladder {\n");
            let spine = match l.spine() {
                SpineKind::Nat => "nat",
                SpineKind::Int => "int",
            };
            writeln!(out, "  spine {spine};").unwrap();
            match l.loops() {
                ColumnPattern::None => {}
                ColumnPattern::All => out.push_str("  loops all;\n"),
                ColumnPattern::Cols(cols) => {
                    let list: Vec<String> = cols.iter().map(i64::to_string).collect();
                    writeln!(out, "  loops cols {};", list.join(", ")).unwrap();
                }
                ColumnPattern::From { start, step } => {
                    writeln!(out, "  loops from {start} step {step};").unwrap()
                }
            }
            for t in l.tails() {
                writeln!(
                    out,
                    "  tail start {} step {} length {}*t+{};",
                    t.start, t.step, t.slope, t.offset
                )
                .unwrap();
            }
            for (col, len) in l.exceptions() {
                writeln!(out, "  tail_exception col {col} length {len};").unwrap();
            }
            out.push_str("}\n");
        }
    }
    out
}
