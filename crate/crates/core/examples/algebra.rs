//! Computes in the Leavitt path algebra: parses elements, multiplies them,
//! and reads off normal forms and homogeneous components.
//!
//! ```text
//! cargo run --example algebra
//! ```

use leavitt::graph::{parse_graph, GraphSpec};
use leavitt::lpa::Lpa;

fn main() {
    let g = parse_graph("vertex v; vertex w; edge e: v -> v; edge f: v -> w; edge g: w -> v;")
        .expect("valid graph");
    let GraphSpec::Finite(fg) = &g else { unreachable!() };
    let lpa = Lpa::new(fg);
    let el = |s: &str| lpa.parse_element(s).expect("valid element").element;

    let products = [
        ("(@v|e)", "(e|@v)"),
        ("(e|@v)", "(@v|e)"),
        ("(f|@v)", "(@v|f)"),
        ("(e|@v) + (f g|@v)", "(@v|e) - w"),
        ("2*(e e|e)", "(e|@v)"),
    ];
    for (x, y) in products {
        let p = lpa.multiply(&el(x), &el(y));
        println!("[{x}] * [{y}] = {}", lpa.render(&p));
    }

    let x = el("v + (e|@v) + 3*(f|g)");
    for d in x.degrees() {
        println!("degree {d:>2}: {}", lpa.render(&x.degree_component(d)));
    }
    let cleared = lpa.sub(&el("(e|e) + (f|f)"), &el("v"));
    println!("(e|e) + (f|f) - v = {}", lpa.render(&cleared));
}
