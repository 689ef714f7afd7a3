//! Strong grading: verdicts, vertex witnesses and their symbolic checks.
//!
//! A vertex `v` lies in `S_1 S_{-1}` through `v = Σ_{s(f)=v} f f*`, and in
//! `S_{-1} S_1` through a list of pairs `(alpha_i, beta_i)` with
//! `|beta_i| = |alpha_i| + 1`, `r(alpha_i) = r(beta_i)` and
//! `v = Σ alpha_i beta_i* beta_i alpha_i*`.

mod reduction;
mod report;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{EdgeId, GraphError, GraphSpec, LadderSpec, Vertex};
use crate::lpa::{algebra_graph, Element, Lpa};
use crate::path::{find_turning_witness, validate_path, InLengths, Path};

pub use reduction::degree_reduction_check;
pub use report::{
    strong_grading_verdict, AnalysisReport, Obstruction, Verdict, VertexWitness, WITNESS_COLUMNS,
};

/// Default bound on the expansion depth of [`decompose_source`].
pub const DEFAULT_DEPTH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("`{0}` is a sink, so it annihilates S_1 and cannot lie in S_1 S_-1")]
    Sink(Vertex),
    #[error("`{0}` emits infinitely many edges")]
    InfiniteEmitter(Vertex),
    #[error("expansion from `{vertex}` passed depth {cap} without reaching turning nodes (suspected Condition (Y1) failure)")]
    DepthCap { vertex: Vertex, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPair {
    pub alpha: Path,
    pub beta: Path,
}

/// `v = Σ alpha_i beta_i* beta_i alpha_i*`, with `k` the first level at which
/// the non-turning paths from `v` run out (`0` for the one-pair form used at
/// non-sources).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TurningDecomposition {
    pub vertex: Vertex,
    pub pairs: Vec<WitnessPair>,
    pub k: usize,
}

/// The out-edges `f` of `v`, with `v = Σ f f*`.
pub fn vertex_in_s1sm1(g: &GraphSpec, v: &Vertex) -> Result<Vec<EdgeId>, GradingError> {
    let out = g.out_edges(v)?;
    if !out.infinite.is_empty() {
        return Err(GradingError::InfiniteEmitter(v.clone()));
    }
    if out.finite.is_empty() {
        return Err(GradingError::Sink(v.clone()));
    }
    Ok(out.finite)
}

/// Checks `v - Σ f f* = 0` in the algebra.
pub fn verify_s1sm1(g: &GraphSpec, v: &Vertex, edges: &[EdgeId]) -> bool {
    let mut cols = column_extent(std::iter::once(v));
    for e in edges {
        match g.endpoints(e) {
            Ok((s, r)) => cols = cols.max(column_extent([&s, &r].into_iter())),
            Err(_) => return false,
        }
    }
    let fg = algebra_graph(g, cols + 1);
    let lpa = Lpa::new(&fg);
    let Some(vi) = fg.vertex_idx(v) else { return false };
    let mut sum = Element::zero();
    for e in edges {
        match fg.edge_idx(e) {
            Some(ei) if fg.src(ei) == vi => {
                let f = lpa.edge_at(ei);
                sum = &sum + &lpa.multiply(&f, &f.star());
            }
            _ => return false,
        }
    }
    lpa.equals(&lpa.vertex_at(vi), &sum)
}

/// A witness for `v ∈ S_{-1} S_1`. A vertex with an in-edge `f` gets the
/// single pair `(@v, f)`, i.e. `v = f* f`; a source is expanded by
/// [`decompose_source`].
pub fn vertex_in_sm1s1(
    g: &GraphSpec,
    v: &Vertex,
    depth_cap: usize,
) -> Result<TurningDecomposition, GradingError> {
    let incoming = g.in_edges(v)?;
    match incoming.into_iter().min() {
        Some(f) => Ok(TurningDecomposition {
            vertex: v.clone(),
            pairs: vec![WitnessPair {
                alpha: Path::trivial(v.clone()),
                beta: Path::new(g.endpoints(&f)?.0, vec![f]),
            }],
            k: 0,
        }),
        None => decompose_source(g, v, depth_cap),
    }
}

/// Expands `v = Σ f f*` breadth first, least edge first: a pair whose range
/// is a turning node is kept, any other is replaced by its full out-star.
/// Each kept `alpha` is matched with the least `beta` one edge longer that
/// ends at `r(alpha)`.
///
/// Works for any vertex that is not a sink; the one-pair form of
/// [`vertex_in_sm1s1`] is shorter for non-sources.
pub fn decompose_source(
    g: &GraphSpec,
    v: &Vertex,
    depth_cap: usize,
) -> Result<TurningDecomposition, GradingError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v.clone()).into());
    }
    let oracle = InLengths::new(g).expect("in-path length iteration cap");
    let mut kept: Vec<Path> = Vec::new();
    let mut frontier: Vec<(Path, Vertex)> = vec![(Path::trivial(v.clone()), v.clone())];
    let mut n = 0;
    while !frontier.is_empty() {
        n += 1;
        if n > depth_cap {
            return Err(GradingError::DepthCap {
                vertex: v.clone(),
                cap: depth_cap,
            });
        }
        let mut next = Vec::new();
        for (p, r) in &frontier {
            for e in vertex_in_s1sm1(g, r)? {
                let (_, dst) = g.endpoints(&e)?;
                let q = p.extended(e);
                if oracle.turns(&dst, n) {
                    kept.push(q);
                } else {
                    next.push((q, dst));
                }
            }
        }
        frontier = next;
    }
    let pairs = kept
        .into_iter()
        .map(|alpha| {
            let beta = find_turning_witness(g, &alpha, 1)?
                .expect("turning nodes have a witness one edge longer");
            Ok(WitnessPair { alpha, beta })
        })
        .collect::<Result<_, GraphError>>()?;
    Ok(TurningDecomposition {
        vertex: v.clone(),
        pairs,
        k: n,
    })
}

/// Symbolic check of a decomposition: each pair has matching ranges and
/// lengths differing by one, and `v - Σ alpha_i beta_i* beta_i alpha_i*`
/// normalizes to zero.
pub fn verify_decomposition(g: &GraphSpec, dec: &TurningDecomposition) -> bool {
    let mut touched = vec![dec.vertex.clone()];
    for p in &dec.pairs {
        if p.beta.len() != p.alpha.len() + 1 || p.alpha.base() != &dec.vertex {
            return false;
        }
        let (Ok((_, ra)), Ok((sb, rb))) = (validate_path(g, &p.alpha), validate_path(g, &p.beta))
        else {
            return false;
        };
        if ra != rb {
            return false;
        }
        touched.extend([ra, sb]);
        for e in p.alpha.edges().iter().chain(p.beta.edges()) {
            if let Ok((s, r)) = g.endpoints(e) {
                touched.extend([s, r]);
            }
        }
    }
    let fg = algebra_graph(g, column_extent(touched.iter()) + 1);
    let lpa = Lpa::new(&fg);
    let Ok(v) = lpa.vertex(&dec.vertex) else { return false };
    let mut sum = Element::zero();
    for p in &dec.pairs {
        let (Ok(down), Ok(up)) = (lpa.mono(&p.alpha, &p.beta), lpa.mono(&p.beta, &p.alpha)) else {
            return false;
        };
        if down.is_homogeneous() != Some(-1) || up.is_homogeneous() != Some(1) {
            return false;
        }
        sum = &sum + &lpa.multiply(&down, &up);
    }
    lpa.is_zero(&(&v - &sum))
}

/// Largest column magnitude among ladder vertices, at least 1.
fn column_extent<'a>(vs: impl Iterator<Item = &'a Vertex>) -> u64 {
    vs.filter_map(LadderSpec::column_of)
        .map(i64::unsigned_abs)
        .max()
        .unwrap_or(0)
        .max(1)
}
