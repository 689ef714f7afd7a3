use std::fmt;

use serde::Serialize;

use super::{InLengths, Path};
use crate::graph::{ColumnPattern, EdgeId, GraphError, GraphSpec, LadderSpec, SpineKind, Vertex};
use crate::koenig::{extract_thread, ExplicitLevels};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum YStatus {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for YStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            YStatus::Holds => "holds",
            YStatus::Fails => "fails",
            YStatus::Unknown => "unknown",
        })
    }
}

/// Why a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum YReason {
    /// Every infinite path in a finite graph enters a cycle, and cycle
    /// vertices have in-paths of every length.
    FiniteGraphTheorem,
    /// A bi-infinite spine gives every vertex in-paths of every length.
    IntSpine,
    /// Loops on infinitely many spine columns.
    CycleCover,
    /// Loops on finitely many (but some) spine columns; every spine vertex
    /// past the first loop has in-paths of every length.
    UpstreamCycle,
    /// Some tail family grows faster than the spine advances.
    SlopeCriterion,
    Counterexample,
}

impl YReason {
    pub fn as_str(self) -> &'static str {
        match self {
            YReason::FiniteGraphTheorem => "finite-graph-theorem",
            YReason::IntSpine => "int-spine",
            YReason::CycleCover => "cycle-cover",
            YReason::UpstreamCycle => "upstream-cycle",
            YReason::SlopeCriterion => "slope-criterion",
            YReason::Counterexample => "counterexample",
        }
    }
}

impl fmt::Display for YReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// How the infinite path of a counterexample continues from its start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Walk down the tail (if any) and then right along the spine forever.
    FollowSpine,
    /// Repeat a cycle forever.
    LoopForever,
}

/// An infinite path, given by its start and route, along which no initial
/// subpath `alpha` has an in-path of length `|alpha| + k` at its range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub start: Vertex,
    pub route: Route,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YVerdict {
    pub status: YStatus,
    pub reason: YReason,
    pub counterexample: Option<Counterexample>,
}

impl YVerdict {
    fn holds(reason: YReason) -> Self {
        YVerdict {
            status: YStatus::Holds,
            reason,
            counterexample: None,
        }
    }

    fn fails(start: Vertex, k: u64) -> Self {
        YVerdict {
            status: YStatus::Fails,
            reason: YReason::Counterexample,
            counterexample: Some(Counterexample {
                start,
                route: Route::FollowSpine,
                k,
            }),
        }
    }
}

/// Condition (Y): along every infinite path, for every `k`, some initial
/// subpath `alpha` admits a path of length `|alpha| + k` into `r(alpha)`.
pub fn check_condition_y(g: &GraphSpec) -> YVerdict {
    match g {
        GraphSpec::Finite(_) => YVerdict::holds(YReason::FiniteGraphTheorem),
        GraphSpec::Ladder(l) => match ladder_criterion(l) {
            Some(reason) => YVerdict::holds(reason),
            None => {
                let start = Vertex::Spine(0);
                let k = (1..)
                    .find(|&k| ladder_fails_from(l, &start, k))
                    .expect("some k fails once the tail excess is exceeded");
                YVerdict::fails(start, k)
            }
        },
    }
}

/// Condition (Y) restricted to `k = 1`.
pub fn check_condition_y1(g: &GraphSpec) -> YVerdict {
    match g {
        GraphSpec::Finite(_) => YVerdict::holds(YReason::FiniteGraphTheorem),
        GraphSpec::Ladder(l) => match ladder_criterion(l) {
            Some(reason) => YVerdict::holds(reason),
            None => {
                let settled = l.settled_column();
                let tops = (0..=settled).filter_map(|col| {
                    l.tail_length(col).map(|depth| Vertex::Tail { col, depth })
                });
                match std::iter::once(Vertex::Spine(0))
                    .chain(tops)
                    .find(|s| ladder_fails_from(l, s, 1))
                {
                    Some(start) => YVerdict::fails(start, 1),
                    None => YVerdict {
                        status: YStatus::Unknown,
                        reason: YReason::Counterexample,
                        counterexample: None,
                    },
                }
            }
        },
    }
}

/// The reason a ladder satisfies Condition (Y), or `None` if it does not.
fn ladder_criterion(l: &LadderSpec) -> Option<YReason> {
    if l.spine() == SpineKind::Int {
        Some(YReason::IntSpine)
    } else if l.loops().is_infinite() {
        Some(YReason::CycleCover)
    } else if !matches!(l.loops(), ColumnPattern::None) {
        Some(YReason::UpstreamCycle)
    } else if l.tails().iter().any(|f| f.outpaces_spine()) {
        Some(YReason::SlopeCriterion)
    } else {
        None
    }
}

/// On a loop-free nat ladder the infinite path from `start` is unique. It
/// fails for `k` when no prefix `alpha` has an in-path of length `|alpha| + k`
/// at its range. Past the settled column every spine prefix has the same
/// slack, so checking one column beyond it decides the whole path.
fn ladder_fails_from(l: &LadderSpec, start: &Vertex, k: u64) -> bool {
    let witnessed = |end: &Vertex, len: u64| l.max_in_length(end).is_none_or(|m| len + k <= m);
    let (col0, len0) = match *start {
        Vertex::Tail { col, depth } => {
            for len in 1..=depth {
                let end = if len == depth {
                    Vertex::Spine(col)
                } else {
                    Vertex::Tail {
                        col,
                        depth: depth - len,
                    }
                };
                if witnessed(&end, len) {
                    return false;
                }
            }
            (col, depth)
        }
        Vertex::Spine(col) => (col, 0),
        Vertex::Named(_) => return false,
    };
    let last = col0.max(l.settled_column()) + 1;
    (col0 + 1..=last).all(|c| !witnessed(&Vertex::Spine(c), len0 + (c - col0) as u64))
}

/// The levels `X_1, ..., X_n` of non-turning paths from `start`: paths of
/// length `n` whose every nonempty prefix ends at a non-turning node.
/// Stops after the first empty level.
pub fn bad_path_levels(
    g: &GraphSpec,
    start: &Vertex,
    depth: usize,
) -> Result<Vec<Vec<Path>>, GraphError> {
    if !g.contains(start) {
        return Err(GraphError::UnknownVertex(start.clone()));
    }
    let oracle = InLengths::new(g).expect("in-path length iteration cap");
    let mut levels: Vec<Vec<Path>> = Vec::new();
    let mut frontier: Vec<(Path, Vertex)> = vec![(Path::trivial(start.clone()), start.clone())];
    for n in 1..=depth {
        let mut next = Vec::new();
        for (p, r) in &frontier {
            for e in out_edge_list(g, r)? {
                let (_, dst) = g.endpoints(&e)?;
                if !oracle.turns(&dst, n) {
                    next.push((p.extended(e), dst));
                }
            }
        }
        next.sort();
        levels.push(next.iter().map(|(p, _)| p.clone()).collect());
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(levels)
}

pub(crate) fn out_edge_list(g: &GraphSpec, v: &Vertex) -> Result<Vec<EdgeId>, GraphError> {
    let out = g.out_edges(v)?;
    let mut all = out.finite;
    all.extend(out.infinite);
    all.sort();
    Ok(all)
}

/// A length-`n` path from `start` all of whose nonempty prefixes end at
/// non-turning nodes, found as a thread of the bad-path level system.
pub fn refute_y1_bounded(
    g: &GraphSpec,
    start: &Vertex,
    n: usize,
) -> Result<Option<Path>, GraphError> {
    if n == 0 {
        return Ok(Some(Path::trivial(start.clone())));
    }
    let levels = bad_path_levels(g, start, n)?;
    if levels.len() < n || levels.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let sys = ExplicitLevels::new(levels, |_, p: &Path| p.parent());
    Ok(extract_thread(&sys, n)
        .ok()
        .and_then(|t| t.last().cloned()))
}
