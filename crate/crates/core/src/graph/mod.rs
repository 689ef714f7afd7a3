//! Directed graphs: finite multigraphs and the "ladder" family of infinite
//! graphs, plus the `.lpg` text format and DOT export.

mod dot;
mod finite;
mod ladder;
mod parse;
mod print;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use dot::export_dot;
pub use finite::{EdgeIdx, EdgeRecord, FiniteGraph, FiniteGraphBuilder, OutEdges, VertexIdx};
pub use ladder::{ColumnPattern, LadderSpec, SpineKind, TailFamily};
pub use parse::{parse_graph, ParseError};
pub use print::print_graph;

/// A vertex label.
///
/// Parsed finite graphs use `Named`; ladder graphs (and windows cut out of
/// them) use the structured spine/tail forms. A tail vertex at `depth` d sits
/// d edges above the spine vertex of its column; depth 0 would be the spine
/// vertex itself and is never used.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Named(String),
    Spine(i64),
    Tail { col: i64, depth: u64 },
}

impl Vertex {
    pub fn named(s: impl Into<String>) -> Self {
        Vertex::Named(s.into())
    }

    /// Parses a label as printed by `Display`.
    pub fn parse_label(s: &str) -> Option<Vertex> {
        if let Some(inner) = bracketed(s, "u") {
            return inner.parse().ok().map(Vertex::Spine);
        }
        if let Some(inner) = bracketed(s, "t") {
            let (c, d) = inner.split_once(':')?;
            return Some(Vertex::Tail {
                col: c.parse().ok()?,
                depth: d.parse().ok()?,
            });
        }
        is_identifier(s).then(|| Vertex::Named(s.to_string()))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Named(s) => f.write_str(s),
            Vertex::Spine(i) => write!(f, "u[{i}]"),
            Vertex::Tail { col, depth } => write!(f, "t[{col}:{depth}]"),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An edge label.
///
/// `Family` is the single record standing for the countably many parallel
/// edges of an `infedges` annotation; `Member` names one of them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeId {
    Named(String),
    Family { src: String, dst: String },
    Member { src: String, dst: String, index: u64 },
    /// u_i -> u_{i+1}
    Spine(i64),
    /// self-loop at u_i
    Loop(i64),
    /// t[col:depth] -> t[col:depth-1] (or into u_col when depth is 1)
    Tail { col: i64, depth: u64 },
}

impl EdgeId {
    pub fn named(s: impl Into<String>) -> Self {
        EdgeId::Named(s.into())
    }

    pub fn parse_label(s: &str) -> Option<EdgeId> {
        if let Some(inner) = bracketed(s, "s") {
            return inner.parse().ok().map(EdgeId::Spine);
        }
        if let Some(inner) = bracketed(s, "l") {
            return inner.parse().ok().map(EdgeId::Loop);
        }
        if let Some(inner) = bracketed(s, "e") {
            let (c, d) = inner.split_once(':')?;
            return Some(EdgeId::Tail {
                col: c.parse().ok()?,
                depth: d.parse().ok()?,
            });
        }
        if let Some(inner) = bracketed(s, "inf") {
            let (src, dst) = inner.split_once("->")?;
            return Some(EdgeId::Family {
                src: src.to_string(),
                dst: dst.to_string(),
            });
        }
        is_identifier(s).then(|| EdgeId::Named(s.to_string()))
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Named(s) => f.write_str(s),
            EdgeId::Family { src, dst } => write!(f, "inf[{src}->{dst}]"),
            EdgeId::Member { src, dst, index } => write!(f, "inf[{src}->{dst}#{index}]"),
            EdgeId::Spine(i) => write!(f, "s[{i}]"),
            EdgeId::Loop(i) => write!(f, "l[{i}]"),
            EdgeId::Tail { col, depth } => write!(f, "e[{col}:{depth}]"),
        }
    }
}

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn bracketed<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    s.strip_prefix(prefix)?.strip_prefix('[')?.strip_suffix(']')
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(Vertex),
    #[error("unknown edge `{0}`")]
    UnknownEdge(EdgeId),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(Vertex),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("edges `{0}` and `{1}` are not consecutive")]
    BrokenPath(EdgeId, EdgeId),
    #[error("path base `{base}` is not the source of its first edge")]
    BadBase { base: Vertex },
    #[error("a path needs at least one edge here")]
    EmptyPath,
}

/// Either an explicit finite graph or a ladder description of an infinite one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Finite(FiniteGraph),
    Ladder(LadderSpec),
}

impl GraphSpec {
    pub fn contains(&self, v: &Vertex) -> bool {
        match self {
            GraphSpec::Finite(g) => g.vertex_idx(v).is_some(),
            GraphSpec::Ladder(l) => l.contains(v),
        }
    }

    /// Source and range of an edge.
    pub fn endpoints(&self, e: &EdgeId) -> Result<(Vertex, Vertex), GraphError> {
        match self {
            GraphSpec::Finite(g) => {
                let idx = g.edge_idx(e).ok_or_else(|| GraphError::UnknownEdge(e.clone()))?;
                let rec = g.edge(idx);
                Ok((g.vertex(rec.src).clone(), g.vertex(rec.dst).clone()))
            }
            GraphSpec::Ladder(l) => l
                .endpoints(e)
                .ok_or_else(|| GraphError::UnknownEdge(e.clone())),
        }
    }

    /// Edges leaving `v`, least id first. Infinite families are reported
    /// separately, one record per family.
    pub fn out_edges(&self, v: &Vertex) -> Result<OutEdges, GraphError> {
        match self {
            GraphSpec::Finite(g) => {
                let idx = g
                    .vertex_idx(v)
                    .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
                Ok(g.out_edge_ids(idx))
            }
            GraphSpec::Ladder(l) => {
                if !l.contains(v) {
                    return Err(GraphError::UnknownVertex(v.clone()));
                }
                Ok(OutEdges {
                    finite: l.out_edges(v),
                    infinite: Vec::new(),
                })
            }
        }
    }

    /// Edges entering `v`, least id first (infinite families included as
    /// their representative record).
    pub fn in_edges(&self, v: &Vertex) -> Result<Vec<EdgeId>, GraphError> {
        match self {
            GraphSpec::Finite(g) => {
                let idx = g
                    .vertex_idx(v)
                    .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
                Ok(g.in_edges(idx).iter().map(|&e| g.edge(e).id.clone()).collect())
            }
            GraphSpec::Ladder(l) => {
                if !l.contains(v) {
                    return Err(GraphError::UnknownVertex(v.clone()));
                }
                Ok(l.in_edges(v))
            }
        }
    }

    /// Exact sink set for finite graphs. Ladder graphs never have sinks: the
    /// spine continues to the right and every tail vertex feeds the spine.
    pub fn detect_sinks(&self) -> Vec<Vertex> {
        match self {
            GraphSpec::Finite(g) => g.sinks().map(|v| g.vertex(v).clone()).collect(),
            GraphSpec::Ladder(_) => Vec::new(),
        }
    }

    pub fn is_row_finite(&self) -> bool {
        match self {
            GraphSpec::Finite(g) => g.is_row_finite(),
            GraphSpec::Ladder(_) => true,
        }
    }

    /// Vertices emitting an infinite edge family.
    pub fn infinite_emitters(&self) -> Vec<Vertex> {
        match self {
            GraphSpec::Finite(g) => g.infinite_emitters().map(|v| g.vertex(v).clone()).collect(),
            GraphSpec::Ladder(_) => Vec::new(),
        }
    }

    pub fn is_source(&self, v: &Vertex) -> Result<bool, GraphError> {
        Ok(self.in_edges(v)?.is_empty())
    }

    pub fn summary(&self) -> String {
        match self {
            GraphSpec::Finite(g) => format!(
                "finite graph, {} vertices, {} edges",
                g.vertex_count(),
                g.edge_count()
            ),
            GraphSpec::Ladder(l) => format!("ladder graph ({l})"),
        }
    }
}
