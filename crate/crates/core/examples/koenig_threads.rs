//! Extracts coherent threads from finite level systems, first from an
//! explicit toy system and then from the bad paths of a ladder.
//!
//! ```text
//! cargo run --example koenig_threads
//! ```

use leavitt::graph::{parse_graph, Vertex};
use leavitt::koenig::{extract_thread, first_empty_level, stabilized_cores, ExplicitLevels};
use leavitt::path::{bad_path_levels, Path};

fn main() {
    // Level n holds the strings of length n over {a, b} with no "bb"; the
    // map drops the last letter.
    let words = |n: usize| -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| ["a", "b"].map(|c| format!("{w}{c}")))
                .filter(|w| !w.contains("bb"))
                .collect();
        }
        out
    };
    let sys = ExplicitLevels::new((1..=8).map(words).collect(), |_, w: &String| {
        w[..w.len() - 1].to_string()
    });
    let cores = stabilized_cores(&sys, 4).expect("nonempty levels");
    for (i, z) in cores.iter().enumerate() {
        println!("core {}: {} items", i + 1, z.len());
    }
    let t = extract_thread(&sys, 6).expect("thread");
    println!("thread: {:?}", t.items());

    // Bad paths from the top of a tail in a failing ladder never run out.
    let i = parse_graph("ladder { spine nat; tail start 1 step 1 length 1*t+1; }").unwrap();
    let levels = bad_path_levels(&i, &Vertex::Spine(0), 12).unwrap();
    let bad = ExplicitLevels::new(levels, |_, p: &Path| p.parent());
    let t = extract_thread(&bad, 12).expect("infinite bad path");
    println!("bad path prefix: {}", t.last().unwrap());

    // In a ladder satisfying the condition they do run out.
    let d = parse_graph("ladder { spine nat; tail start 1 step 1 length 2*t+2; }").unwrap();
    let top = Vertex::Tail { col: 1, depth: 2 };
    let levels = bad_path_levels(&d, &top, 16).unwrap();
    let sys = ExplicitLevels::new(levels, |_, p: &Path| p.parent());
    println!("bad paths from {top} run out at level {:?}", first_empty_level(&sys, 16));
}
