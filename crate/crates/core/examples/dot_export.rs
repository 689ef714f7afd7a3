//! Writes Graphviz DOT for a finite graph and for a window of each corpus
//! ladder.
//!
//! ```text
//! cargo run --example dot_export -- OUT_DIR
//! ```

use std::path::PathBuf;

use leavitt::corpus::corpus;
use leavitt::graph::export_dot;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(|| std::env::temp_dir().join("leavitt-dot"), PathBuf::from);
    std::fs::create_dir_all(&dir)?;
    for e in corpus() {
        let path = dir.join(format!("{}.dot", e.name.to_lowercase()));
        std::fs::write(&path, export_dot(&e.spec, 4))?;
        println!("{:<10} {}  ->  {}", e.name, e.spec.summary(), path.display());
    }
    Ok(())
}
