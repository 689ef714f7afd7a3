//! Builds and verifies both halves of the strong-grading witness for each
//! vertex of a small graph: `v = Σ f f*` and `v = Σ alpha beta* beta alpha*`.
//!
//! ```text
//! cargo run --example witnesses
//! ```

use leavitt::graph::{parse_graph, GraphSpec};
use leavitt::grading::{
    decompose_source, verify_decomposition, verify_s1sm1, vertex_in_s1sm1, vertex_in_sm1s1,
    DEFAULT_DEPTH_CAP,
};

const GRAPH: &str = "
    vertex s; vertex u; vertex v;
    edge a: s -> u; edge b: s -> v;
    edge c: u -> v; edge d: v -> u; edge e: v -> v;
";

fn main() {
    let g = parse_graph(GRAPH).expect("valid graph");
    let GraphSpec::Finite(f) = &g else { unreachable!() };
    for v in f.vertex_labels() {
        let out = vertex_in_s1sm1(&g, v).expect("no sinks");
        let names: Vec<String> = out.iter().map(|e| e.to_string()).collect();
        println!("{v} = sum of f f* over [{}]: {}", names.join(", "), verify_s1sm1(&g, v, &out));

        let short = vertex_in_sm1s1(&g, v, DEFAULT_DEPTH_CAP).expect("decomposes");
        let long = decompose_source(&g, v, DEFAULT_DEPTH_CAP).expect("decomposes");
        for (label, d) in [("short", &short), ("expanded", &long)] {
            let pairs: Vec<String> = d
                .pairs
                .iter()
                .map(|p| format!("({}, {})", p.alpha, p.beta))
                .collect();
            println!(
                "  {label:<8} k={} {} verified={}",
                d.k,
                pairs.join(" "),
                verify_decomposition(&g, d)
            );
        }
    }
}
