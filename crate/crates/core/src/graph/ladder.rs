use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::{EdgeId, FiniteGraph, FiniteGraphBuilder, Vertex};
use crate::path::EventuallyPeriodicSet;

/// Whether the spine is `u_0, u_1, ...` or runs over all integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpineKind {
    Nat,
    Int,
}

/// Spine columns carrying a self-loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ColumnPattern {
    None,
    All,
    Cols(BTreeSet<i64>),
    /// `start, start + step, start + 2*step, ...`
    From { start: i64, step: u64 },
}

impl ColumnPattern {
    pub fn contains(&self, col: i64) -> bool {
        match self {
            ColumnPattern::None => false,
            ColumnPattern::All => true,
            ColumnPattern::Cols(cols) => cols.contains(&col),
            ColumnPattern::From { start, step } => {
                col >= *start && (col - start) % (*step as i64) == 0
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            ColumnPattern::None => true,
            ColumnPattern::Cols(cols) => cols.is_empty(),
            _ => false,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ColumnPattern::All | ColumnPattern::From { .. })
    }

    /// Least marked column that is `>= floor`.
    fn first_at_or_after(&self, floor: i64) -> Option<i64> {
        match self {
            ColumnPattern::None => None,
            ColumnPattern::All => Some(floor),
            ColumnPattern::Cols(cols) => cols.range(floor..).next().copied(),
            ColumnPattern::From { start, step } => {
                if *start >= floor {
                    Some(*start)
                } else {
                    let step = *step as i64;
                    let t = (floor - start + step - 1) / step;
                    Some(start + t * step)
                }
            }
        }
    }
}

/// Tails of length `slope * t + offset` attached at columns
/// `start + step * t` for `t = 0, 1, 2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TailFamily {
    pub start: i64,
    pub step: u64,
    pub slope: u64,
    pub offset: i64,
}

impl TailFamily {
    pub fn column(&self, t: u64) -> i64 {
        self.start + (self.step * t) as i64
    }

    pub fn length(&self, t: u64) -> u64 {
        self.slope * t + self.offset as u64
    }

    /// Family index attached at `col`, if any.
    pub fn index_at(&self, col: i64) -> Option<u64> {
        if col < self.start {
            return None;
        }
        let d = (col - self.start) as u64;
        d.is_multiple_of(self.step).then_some(d / self.step)
    }

    /// Tail lengths grow faster than the columns advance.
    pub fn outpaces_spine(&self) -> bool {
        self.slope > self.step
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("tail step must be positive")]
    ZeroStep,
    #[error("tail length must be at least 1 (got {0} at t = 0)")]
    NonPositiveLength(i64),
    #[error("column {0} is not on a nat spine")]
    NegativeColumn(i64),
    #[error("tail exception at column {0} must have positive length")]
    ZeroException(i64),
}

/// An infinite "ladder" graph: a spine `u_i -> u_{i+1}`, optional self-loops
/// on spine vertices, and finite line paths ("tails") feeding into spine
/// vertices.
///
/// When several families land on one column the longest tail wins; an
/// explicit exception replaces whatever the families put there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderSpec {
    spine: SpineKind,
    loops: ColumnPattern,
    tails: Vec<TailFamily>,
    exceptions: BTreeMap<i64, u64>,
}

impl LadderSpec {
    pub fn new(
        spine: SpineKind,
        loops: ColumnPattern,
        tails: Vec<TailFamily>,
        exceptions: BTreeMap<i64, u64>,
    ) -> Result<Self, LadderError> {
        let nat = spine == SpineKind::Nat;
        for f in &tails {
            if f.step == 0 {
                return Err(LadderError::ZeroStep);
            }
            if f.offset < 1 {
                return Err(LadderError::NonPositiveLength(f.offset));
            }
            if nat && f.start < 0 {
                return Err(LadderError::NegativeColumn(f.start));
            }
        }
        for (&col, &len) in &exceptions {
            if len == 0 {
                return Err(LadderError::ZeroException(col));
            }
            if nat && col < 0 {
                return Err(LadderError::NegativeColumn(col));
            }
        }
        match &loops {
            ColumnPattern::From { step: 0, .. } => return Err(LadderError::ZeroStep),
            ColumnPattern::From { start, .. } if nat && *start < 0 => {
                return Err(LadderError::NegativeColumn(*start))
            }
            ColumnPattern::Cols(cols) if nat => {
                if let Some(&c) = cols.iter().find(|&&c| c < 0) {
                    return Err(LadderError::NegativeColumn(c));
                }
            }
            _ => {}
        }
        let loops = if loops.is_empty() {
            ColumnPattern::None
        } else {
            loops
        };
        Ok(LadderSpec {
            spine,
            loops,
            tails,
            exceptions,
        })
    }

    /// The bare ray `u_0 -> u_1 -> ...`.
    pub fn ray() -> Self {
        LadderSpec {
            spine: SpineKind::Nat,
            loops: ColumnPattern::None,
            tails: Vec::new(),
            exceptions: BTreeMap::new(),
        }
    }

    pub fn spine(&self) -> SpineKind {
        self.spine
    }

    pub fn loops(&self) -> &ColumnPattern {
        &self.loops
    }

    pub fn tails(&self) -> &[TailFamily] {
        &self.tails
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, u64> {
        &self.exceptions
    }

    pub fn has_column(&self, col: i64) -> bool {
        self.spine == SpineKind::Int || col >= 0
    }

    pub fn has_loop(&self, col: i64) -> bool {
        self.has_column(col) && self.loops.contains(col)
    }

    /// Length of the tail feeding `u_col`, if one is attached.
    pub fn tail_length(&self, col: i64) -> Option<u64> {
        if let Some(&len) = self.exceptions.get(&col) {
            return Some(len);
        }
        self.tails
            .iter()
            .filter_map(|f| f.index_at(col).map(|t| f.length(t)))
            .max()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        match *v {
            Vertex::Spine(i) => self.has_column(i),
            Vertex::Tail { col, depth } => {
                depth >= 1 && self.tail_length(col).is_some_and(|len| depth <= len)
            }
            Vertex::Named(_) => false,
        }
    }

    pub fn endpoints(&self, e: &EdgeId) -> Option<(Vertex, Vertex)> {
        match *e {
            EdgeId::Spine(i) if self.has_column(i) => {
                Some((Vertex::Spine(i), Vertex::Spine(i + 1)))
            }
            EdgeId::Loop(i) if self.has_loop(i) => Some((Vertex::Spine(i), Vertex::Spine(i))),
            EdgeId::Tail { col, depth } => {
                let src = Vertex::Tail { col, depth };
                if !self.contains(&src) {
                    return None;
                }
                let dst = if depth == 1 {
                    Vertex::Spine(col)
                } else {
                    Vertex::Tail {
                        col,
                        depth: depth - 1,
                    }
                };
                Some((src, dst))
            }
            _ => None,
        }
    }

    /// Out-edges of a vertex of this ladder, in id order.
    pub fn out_edges(&self, v: &Vertex) -> Vec<EdgeId> {
        match *v {
            Vertex::Spine(i) => {
                let mut out = vec![EdgeId::Spine(i)];
                if self.has_loop(i) {
                    out.push(EdgeId::Loop(i));
                }
                out
            }
            Vertex::Tail { col, depth } => vec![EdgeId::Tail { col, depth }],
            Vertex::Named(_) => Vec::new(),
        }
    }

    pub fn in_edges(&self, v: &Vertex) -> Vec<EdgeId> {
        match *v {
            Vertex::Spine(i) => {
                let mut inc = Vec::new();
                if self.has_column(i - 1) {
                    inc.push(EdgeId::Spine(i - 1));
                }
                if self.has_loop(i) {
                    inc.push(EdgeId::Loop(i));
                }
                if self.tail_length(i).is_some() {
                    inc.push(EdgeId::Tail { col: i, depth: 1 });
                }
                inc
            }
            Vertex::Tail { col, depth } => match self.tail_length(col) {
                Some(len) if depth < len => vec![EdgeId::Tail {
                    col,
                    depth: depth + 1,
                }],
                _ => Vec::new(),
            },
            Vertex::Named(_) => Vec::new(),
        }
    }

    /// `max_{j <= n} (L(j) - j)` over attached tails, or `None` if no tail
    /// sits at a column `<= n`.
    pub fn max_tail_excess(&self, n: i64) -> Option<i64> {
        let mut best: Option<i64> = None;
        let mut bump = |x: i64| best = Some(best.map_or(x, |b: i64| b.max(x)));
        for (&col, &len) in self.exceptions.range(..=n) {
            bump(len as i64 - col);
        }
        for f in &self.tails {
            if f.start > n {
                continue;
            }
            let t_max = ((n - f.start) as u64) / f.step;
            let value = |t: u64| f.length(t) as i64 - f.column(t);
            let free = |t: &u64| !self.exceptions.contains_key(&f.column(*t));
            // the excess is monotone in t, so only the first free index from
            // the right end can be the maximum
            let pick = if f.slope > f.step {
                (0..=t_max).rev().find(free)
            } else {
                (0..=t_max).find(free)
            };
            if let Some(t) = pick {
                bump(value(t));
            }
        }
        best
    }

    /// Column past which nothing new happens: every exception and every
    /// family start lies before it, with one full step to spare.
    pub fn settled_column(&self) -> i64 {
        let last_exc = self.exceptions.keys().next_back().copied().unwrap_or(0);
        let last_start = self.tails.iter().map(|f| f.start).max().unwrap_or(0);
        let step = self.tails.iter().map(|f| f.step as i64).max().unwrap_or(1);
        last_exc.max(last_start).max(0) + step
    }

    /// Longest path ending at `v`, or `None` when arbitrarily long ones exist.
    pub fn max_in_length(&self, v: &Vertex) -> Option<u64> {
        match *v {
            Vertex::Tail { col, depth } => Some(self.tail_length(col).unwrap_or(depth) - depth),
            Vertex::Spine(n) => {
                if self.spine == SpineKind::Int {
                    return None;
                }
                if self.loops.first_at_or_after(0).is_some_and(|c| c <= n) {
                    return None;
                }
                let excess = self.max_tail_excess(n).unwrap_or(0).max(0);
                Some((n + excess) as u64)
            }
            Vertex::Named(_) => Some(0),
        }
    }

    /// The set of lengths `l >= 1` of paths ending at `v`.
    pub fn in_path_lengths(&self, v: &Vertex) -> EventuallyPeriodicSet {
        match self.max_in_length(v) {
            None => EventuallyPeriodicSet::at_least(1),
            Some(m) => EventuallyPeriodicSet::interval(1, m),
        }
    }

    /// Column range of a window with `cols` columns on each side that exists.
    pub fn window_columns(&self, cols: u64) -> (i64, i64) {
        let c = cols as i64;
        match self.spine {
            SpineKind::Nat => (0, c),
            SpineKind::Int => (-c, c),
        }
    }

    /// The induced finite subgraph on a range of spine columns with their
    /// loops and tails. The rightmost spine vertex (and, on an integer
    /// spine, the leftmost) is marked as boundary.
    pub fn materialize_window(&self, cols: u64) -> FiniteGraph {
        let (lo, hi) = self.window_columns(cols.max(1));
        let mut b = FiniteGraphBuilder::new();
        for j in lo..=hi {
            b.add_vertex(Vertex::Spine(j));
            if j < hi {
                b.add_edge(EdgeId::Spine(j), Vertex::Spine(j), Vertex::Spine(j + 1));
            }
            if self.has_loop(j) {
                b.add_edge(EdgeId::Loop(j), Vertex::Spine(j), Vertex::Spine(j));
            }
            if let Some(len) = self.tail_length(j) {
                for d in 1..=len {
                    let src = Vertex::Tail { col: j, depth: d };
                    let dst = if d == 1 {
                        Vertex::Spine(j)
                    } else {
                        Vertex::Tail { col: j, depth: d - 1 }
                    };
                    b.add_vertex(src.clone());
                    b.add_edge(EdgeId::Tail { col: j, depth: d }, src, dst);
                }
            }
        }
        b.add_boundary(Vertex::Spine(hi));
        if self.spine == SpineKind::Int {
            b.add_boundary(Vertex::Spine(lo));
        }
        b.build().expect("window construction is internally consistent")
    }

    /// Column a vertex lives in.
    pub fn column_of(v: &Vertex) -> Option<i64> {
        match *v {
            Vertex::Spine(i) => Some(i),
            Vertex::Tail { col, .. } => Some(col),
            Vertex::Named(_) => None,
        }
    }
}

impl fmt::Display for LadderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spine = match self.spine {
            SpineKind::Nat => "nat",
            SpineKind::Int => "int",
        };
        write!(f, "spine {spine}")?;
        match &self.loops {
            ColumnPattern::None => {}
            ColumnPattern::All => write!(f, ", loops everywhere")?,
            ColumnPattern::Cols(c) => write!(f, ", loops at {c:?}")?,
            ColumnPattern::From { start, step } => {
                write!(f, ", loops from {start} step {step}")?
            }
        }
        for t in &self.tails {
            write!(
                f,
                ", tails {}*t+{} from {} step {}",
                t.slope, t.offset, t.start, t.step
            )?;
        }
        if !self.exceptions.is_empty() {
            write!(f, ", {} tail exceptions", self.exceptions.len())?;
        }
        Ok(())
    }
}
