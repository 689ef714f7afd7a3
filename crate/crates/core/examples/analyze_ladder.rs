//! Parses a ladder graph from text, checks Conditions (Y) and (Y1), and
//! prints the full report.
//!
//! ```text
//! cargo run --example analyze_ladder
//! cargo run --example analyze_ladder -- "ladder { spine nat; tail start 0 step 1 length 1*t+1; }"
//! ```

use leavitt::graph::parse_graph;
use leavitt::grading::strong_grading_verdict;
use leavitt::path::{check_condition_y1, refute_y1_bounded};

const DEFAULT: &str = "ladder { spine nat; tail start 1 step 2 length 3*t+2; }";

fn main() {
    let src = std::env::args().nth(1).unwrap_or_else(|| DEFAULT.to_string());
    let g = match parse_graph(&src) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(65);
        }
    };
    let report = strong_grading_verdict(&g);
    print!("{}", report.render_text());

    // A failing ladder comes with a start vertex; walk a bad path of each
    // length from it.
    if let Some(c) = check_condition_y1(&g).counterexample {
        for n in [1, 4, 16] {
            if let Ok(Some(p)) = refute_y1_bounded(&g, &c.start, n) {
                println!("bad path of length {n}: {p}");
            }
        }
    }
}
