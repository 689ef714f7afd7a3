//! Finite paths, in-path length sets, turning nodes and the Condition (Y)
//! deciders.

mod condition;
mod eps;
mod lengths;

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{EdgeId, GraphError, GraphSpec, Vertex};

pub use condition::{
    bad_path_levels, check_condition_y, check_condition_y1, refute_y1_bounded, Counterexample,
    Route, YReason, YStatus, YVerdict,
};
pub use eps::{EpsError, EventuallyPeriodicSet};
pub use lengths::{
    find_turning_witness, in_path_length_table, in_path_lengths, is_turning_node, try_in_path_lengths,
    InLengths, LengthError, ITERATION_CAP,
};

/// A finite path: a vertex and a (possibly empty) edge sequence leaving it.
///
/// `base` is the source vertex. An empty edge list is the trivial path at
/// `base`. Whether the edges actually chain is checked against a graph by
/// [`validate_path`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    base: Vertex,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path {
            base: v,
            edges: Vec::new(),
        }
    }

    pub fn new(base: Vertex, edges: Vec<EdgeId>) -> Self {
        Path { base, edges }
    }

    /// Path through `edges`, based at the source of the first one.
    pub fn from_edges(g: &GraphSpec, edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        let first = edges.first().ok_or(GraphError::EmptyPath)?;
        let (base, _) = g.endpoints(first)?;
        let p = Path { base, edges };
        validate_path(g, &p)?;
        Ok(p)
    }

    pub fn base(&self) -> &Vertex {
        &self.base
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn extended(&self, e: EdgeId) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            base: self.base.clone(),
            edges,
        }
    }

    /// The path without its last edge (a trivial path stays put).
    pub fn parent(&self) -> Path {
        let mut edges = self.edges.clone();
        edges.pop();
        Path {
            base: self.base.clone(),
            edges,
        }
    }

    pub fn prefix(&self, n: usize) -> Path {
        Path {
            base: self.base.clone(),
            edges: self.edges[..n.min(self.edges.len())].to_vec(),
        }
    }

    /// Range of the path in `g`.
    pub fn range(&self, g: &GraphSpec) -> Result<Vertex, GraphError> {
        validate_path(g, self).map(|(_, r)| r)
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .cmp(&other.edges)
            .then_with(|| self.base.cmp(&other.base))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "@{}", self.base);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Checks that `p` is a path of `g` and returns its source and range.
pub fn validate_path(g: &GraphSpec, p: &Path) -> Result<(Vertex, Vertex), GraphError> {
    if !g.contains(&p.base) {
        return Err(GraphError::UnknownVertex(p.base.clone()));
    }
    let mut cur = p.base.clone();
    let mut prev: Option<&EdgeId> = None;
    for e in &p.edges {
        let (s, r) = g.endpoints(e)?;
        if s != cur {
            return Err(match prev {
                None => GraphError::BadBase {
                    base: p.base.clone(),
                },
                Some(pe) => GraphError::BrokenPath(pe.clone(), e.clone()),
            });
        }
        cur = r;
        prev = Some(e);
    }
    Ok((p.base.clone(), cur))
}
