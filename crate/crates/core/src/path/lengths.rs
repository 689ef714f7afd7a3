use std::collections::HashMap;

use thiserror::Error;

use super::{validate_path, EventuallyPeriodicSet, Path};
use crate::graph::{EdgeIdx, FiniteGraph, GraphError, GraphSpec, LadderSpec, SpineKind, Vertex, VertexIdx};

/// Iterations of the reachability vector before giving up.
pub const ITERATION_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LengthError {
    #[error("reachability vectors did not repeat within {0} iterations")]
    IterationCap(usize),
}

/// In-path length sets of every vertex, indexed by `VertexIdx`.
///
/// Iterates `b_l[w] = "some path of length l ends at w"` from
/// `b_1[w] = "w has an in-edge"` until a vector repeats; the repetition gives
/// threshold and period for all vertices at once.
pub fn in_path_length_table(g: &FiniteGraph) -> Result<Vec<EventuallyPeriodicSet>, LengthError> {
    let n = g.vertex_count();
    let mut cur: Vec<bool> = g.vertices().map(|w| !g.in_edges(w).is_empty()).collect();
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut history: Vec<Vec<bool>> = Vec::new();
    let (mu, lambda) = loop {
        let l = history.len() + 1;
        if let Some(&first) = seen.get(&cur) {
            break (first, l - first);
        }
        if l > ITERATION_CAP {
            return Err(LengthError::IterationCap(ITERATION_CAP));
        }
        let next: Vec<bool> = g
            .vertices()
            .map(|w| g.in_edges(w).iter().any(|&e| cur[g.src(e).index()]))
            .collect();
        seen.insert(cur.clone(), l);
        history.push(std::mem::replace(&mut cur, next));
    };
    Ok((0..n)
        .map(|v| {
            EventuallyPeriodicSet::from_fn(mu as u64, lambda as u64, |l| {
                l >= 1 && history[l as usize - 1][v]
            })
        })
        .collect())
}

pub fn try_in_path_lengths(
    g: &FiniteGraph,
    v: VertexIdx,
) -> Result<EventuallyPeriodicSet, LengthError> {
    in_path_length_table(g).map(|mut t| t.swap_remove(v.index()))
}

/// `{l >= 1 : some path of length l ends at v}`.
///
/// # Panics
/// If the reachability vectors fail to cycle within [`ITERATION_CAP`]
/// steps, which needs far more vertices than this tool is meant for.
pub fn in_path_lengths(g: &FiniteGraph, v: VertexIdx) -> EventuallyPeriodicSet {
    try_in_path_lengths(g, v).expect("in-path length iteration cap")
}

/// In-path length oracle for a graph: a precomputed table for finite graphs,
/// the closed form for ladders.
pub enum InLengths<'a> {
    Finite {
        graph: &'a FiniteGraph,
        table: Vec<EventuallyPeriodicSet>,
    },
    Ladder(&'a LadderSpec),
}

impl<'a> InLengths<'a> {
    pub fn new(g: &'a GraphSpec) -> Result<Self, LengthError> {
        Ok(match g {
            GraphSpec::Finite(f) => InLengths::Finite {
                graph: f,
                table: in_path_length_table(f)?,
            },
            GraphSpec::Ladder(l) => InLengths::Ladder(l),
        })
    }

    pub fn lengths(&self, v: &Vertex) -> Option<EventuallyPeriodicSet> {
        match self {
            InLengths::Finite { graph, table } => {
                graph.vertex_idx(v).map(|i| table[i.index()].clone())
            }
            InLengths::Ladder(l) => l.contains(v).then(|| l.in_path_lengths(v)),
        }
    }

    /// Some path of length `len >= 1` ends at `v`.
    pub fn admits(&self, v: &Vertex, len: u64) -> bool {
        if len == 0 {
            return true;
        }
        match self {
            InLengths::Finite { graph, table } => graph
                .vertex_idx(v)
                .is_some_and(|i| table[i.index()].contains(len)),
            InLengths::Ladder(l) => l.max_in_length(v).is_none_or(|m| len <= m),
        }
    }

    /// `r(alpha)` is a turning node for `alpha`, where `range` is `r(alpha)`.
    pub fn turns(&self, range: &Vertex, alpha_len: usize) -> bool {
        self.admits(range, alpha_len as u64 + 1)
    }
}

/// Whether `r(alpha)` is a turning node for `alpha`: some path one edge
/// longer than `alpha` also ends at `r(alpha)`.
pub fn is_turning_node(g: &GraphSpec, alpha: &Path) -> Result<bool, GraphError> {
    let (_, r) = validate_path(g, alpha)?;
    let oracle = InLengths::new(g).expect("in-path length iteration cap");
    Ok(oracle.turns(&r, alpha.len()))
}

/// The lexicographically least path `beta` with `r(beta) = r(alpha)` and
/// `|beta| = |alpha| + k`.
pub fn find_turning_witness(
    g: &GraphSpec,
    alpha: &Path,
    k: u64,
) -> Result<Option<Path>, GraphError> {
    let (_, r) = validate_path(g, alpha)?;
    let len = alpha.len() + k as usize;
    Ok(match g {
        GraphSpec::Finite(f) => {
            let target = f.vertex_idx(&r).expect("validated");
            least_path_into(f, target, len)
        }
        GraphSpec::Ladder(l) => {
            // every path into column c stays at columns <= c, and on an
            // integer spine a path of length len starts at column >= c - len
            let col = LadderSpec::column_of(&r).expect("ladder vertex");
            let cols = match l.spine() {
                SpineKind::Nat => col.max(1) as u64,
                SpineKind::Int => col.unsigned_abs() + len as u64 + 1,
            };
            let w = l.materialize_window(cols);
            let target = w.vertex_idx(&r).expect("window covers the range");
            least_path_into(&w, target, len)
        }
    })
}

/// Least path of length `len` ending at `target`, by edge order.
pub(crate) fn least_path_into(g: &FiniteGraph, target: VertexIdx, len: usize) -> Option<Path> {
    // can[l][x]: some path of length l leads from x to target
    let n = g.vertex_count();
    let mut can = vec![vec![false; n]; len + 1];
    can[0][target.index()] = true;
    for l in 1..=len {
        for x in g.vertices() {
            can[l][x.index()] = g.out_edges(x).iter().any(|&e| can[l - 1][g.dst(e).index()]);
        }
    }
    if len == 0 {
        return Some(Path::trivial(g.vertex(target).clone()));
    }
    let first = g
        .edge_indices()
        .find(|&e| can[len][g.src(e).index()] && can[len - 1][g.dst(e).index()])?;
    let mut edges: Vec<EdgeIdx> = vec![first];
    let mut cur = g.dst(first);
    for rem in (0..len - 1).rev() {
        let e = *g
            .out_edges(cur)
            .iter()
            .find(|&&e| can[rem][g.dst(e).index()])
            .expect("reachability table is consistent");
        edges.push(e);
        cur = g.dst(e);
    }
    Some(Path::new(
        g.vertex(g.src(first)).clone(),
        edges.into_iter().map(|e| g.edge(e).id.clone()).collect(),
    ))
}
