//! The built-in corpus: ladder graphs A to K and a few finite fixtures.

use crate::graph::{parse_graph, GraphSpec};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub spec: GraphSpec,
    /// Whether Condition (Y) is expected to hold.
    pub expected_y: bool,
}

const SOURCES: &[(&str, &str, bool)] = &[
    ("A", include_str!("../corpus/a.lpg"), true),
    ("B", include_str!("../corpus/b.lpg"), true),
    ("C", include_str!("../corpus/c.lpg"), true),
    ("D", include_str!("../corpus/d.lpg"), true),
    ("E", include_str!("../corpus/e.lpg"), true),
    ("F", include_str!("../corpus/f.lpg"), true),
    ("G", include_str!("../corpus/g.lpg"), true),
    ("H", include_str!("../corpus/h.lpg"), false),
    ("I", include_str!("../corpus/i.lpg"), false),
    ("J", include_str!("../corpus/j.lpg"), false),
    ("K", include_str!("../corpus/k.lpg"), false),
    ("rose", include_str!("../corpus/rose.lpg"), true),
    ("two_loops", include_str!("../corpus/two_loops.lpg"), true),
    ("two_cycle", include_str!("../corpus/two_cycle.lpg"), true),
    ("parallel", include_str!("../corpus/parallel.lpg"), true),
];

/// Number of ladder entries (A to K) at the front of [`corpus`].
pub const LADDER_ENTRIES: usize = 11;

/// All entries, ladders first in alphabetical order, then the finite
/// fixtures.
pub fn corpus() -> Vec<CorpusEntry> {
    SOURCES
        .iter()
        .map(|&(name, source, expected_y)| CorpusEntry {
            name,
            source,
            spec: parse_graph(source).unwrap_or_else(|e| panic!("corpus entry {name}: {e}")),
            expected_y,
        })
        .collect()
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
