//! Runs every built-in graph and prints its Condition (Y) verdict next to
//! the expected one.
//!
//! ```text
//! cargo run --example corpus
//! ```

use leavitt::corpus::corpus;
use leavitt::grading::strong_grading_verdict;

fn main() {
    println!("{:<10} {:<8} {:<8} {:<22} graded", "name", "Y", "expected", "reason");
    for e in corpus() {
        let r = strong_grading_verdict(&e.spec);
        let y = &r.condition_y;
        let expected = if e.expected_y { "holds" } else { "fails" };
        let reason = match &y.counterexample {
            Some(c) => format!("{} (k={}, from {})", y.reason, c.k, c.start),
            None => y.reason.to_string(),
        };
        println!("{:<10} {:<8} {:<8} {:<22} {}", e.name, y.status, expected, reason, r.strongly_graded);
    }
}
