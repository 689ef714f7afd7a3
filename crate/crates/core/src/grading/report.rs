use std::fmt::Write;

use serde::Serialize;

use super::{
    verify_decomposition, verify_s1sm1, vertex_in_s1sm1, vertex_in_sm1s1, TurningDecomposition,
    WitnessPair, DEFAULT_DEPTH_CAP,
};
use crate::graph::{EdgeId, GraphSpec, SpineKind, Vertex};
use crate::path::{check_condition_y, check_condition_y1, YReason, YStatus, YVerdict};

/// Ladder witnesses are built for spine columns within this distance of 0,
/// together with their tails.
pub const WITNESS_COLUMNS: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

/// A named reason the algebra is not strongly graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Sink(Vertex),
    InfiniteEmitter(Vertex),
    ConditionY { start: Vertex, k: u64 },
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::Sink(v) => write!(f, "sink `{v}`: v = v^2 lies in v S_1 S_-1 = 0"),
            Obstruction::InfiniteEmitter(v) => {
                write!(f, "infinite emitter `{v}`: the graph is not row-finite")
            }
            Obstruction::ConditionY { start, k } => write!(
                f,
                "Condition (Y) fails along the infinite path from `{start}` for k = {k}"
            ),
        }
    }
}

/// Witnesses for one vertex: `v = Σ f f*` over `out_edges`, and a
/// decomposition placing `v` in `S_-1 S_1`. `verified` covers both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWitness {
    pub vertex: Vertex,
    pub out_edges: Vec<EdgeId>,
    pub decomposition: TurningDecomposition,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub graph: String,
    pub row_finite: bool,
    pub sinks: Vec<Vertex>,
    pub infinite_emitters: Vec<Vertex>,
    pub condition_y: YVerdict,
    pub condition_y1: YVerdict,
    pub strongly_graded: Verdict,
    pub obstructions: Vec<Obstruction>,
    pub reasons: Vec<String>,
    pub witnesses: Vec<VertexWitness>,
}

impl AnalysisReport {
    pub fn all_verified(&self) -> bool {
        self.witnesses.iter().all(|w| w.verified)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = ReportJson {
            graph: &self.graph,
            row_finite: self.row_finite,
            sinks: &self.sinks,
            infinite_emitters: &self.infinite_emitters,
            condition_y: YJson::from(&self.condition_y),
            condition_y1: YJson::from(&self.condition_y1),
            strongly_graded: self.strongly_graded,
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    vertex: &w.vertex,
                    pairs: &w.decomposition.pairs,
                    k: w.decomposition.k,
                    verified: w.verified,
                })
                .collect(),
        };
        serde_json::to_value(json).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let list = |vs: &[Vertex]| {
            if vs.is_empty() {
                "none".to_string()
            } else {
                vs.iter().map(Vertex::to_string).collect::<Vec<_>>().join(", ")
            }
        };
        writeln!(out, "graph: {}", self.graph).unwrap();
        writeln!(out, "row-finite: {}", if self.row_finite { "yes" } else { "no" }).unwrap();
        writeln!(out, "sinks: {}", list(&self.sinks)).unwrap();
        writeln!(out, "infinite emitters: {}", list(&self.infinite_emitters)).unwrap();
        writeln!(out, "condition (Y): {}", verdict_line(&self.condition_y)).unwrap();
        writeln!(out, "condition (Y1): {}", verdict_line(&self.condition_y1)).unwrap();
        writeln!(out, "strongly graded: {}", self.strongly_graded).unwrap();
        for r in &self.reasons {
            writeln!(out, "  - {r}").unwrap();
        }
        if !self.witnesses.is_empty() {
            let ok = self.witnesses.iter().filter(|w| w.verified).count();
            writeln!(out, "witnesses: {ok}/{} vertices verified", self.witnesses.len()).unwrap();
        }
        out
    }
}

fn verdict_line(y: &YVerdict) -> String {
    match &y.counterexample {
        Some(cx) => format!("{} [{}; start {}, k = {}]", y.status, y.reason, cx.start, cx.k),
        None => format!("{} [{}]", y.status, y.reason),
    }
}

#[derive(Serialize)]
struct YJson<'a> {
    status: YStatus,
    reason: YReason,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample_k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<&'a Vertex>,
}

impl<'a> From<&'a YVerdict> for YJson<'a> {
    fn from(y: &'a YVerdict) -> Self {
        YJson {
            status: y.status,
            reason: y.reason,
            counterexample_k: y.counterexample.as_ref().map(|c| c.k),
            start: y.counterexample.as_ref().map(|c| &c.start),
        }
    }
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    vertex: &'a Vertex,
    pairs: &'a [WitnessPair],
    k: usize,
    verified: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    graph: &'a str,
    row_finite: bool,
    sinks: &'a [Vertex],
    infinite_emitters: &'a [Vertex],
    #[serde(rename = "condition_Y")]
    condition_y: YJson<'a>,
    #[serde(rename = "condition_Y1")]
    condition_y1: YJson<'a>,
    strongly_graded: Verdict,
    witnesses: Vec<WitnessJson<'a>>,
}

/// Evaluates the three clauses (no sink, row-finite, Condition (Y)). When
/// all hold, every vertex of a finite graph (or the vertices near column 0
/// of a ladder) also gets both witnesses, checked symbolically.
pub fn strong_grading_verdict(g: &GraphSpec) -> AnalysisReport {
    let sinks = g.detect_sinks();
    let infinite_emitters = g.infinite_emitters();
    let row_finite = g.is_row_finite();
    let condition_y = check_condition_y(g);
    let condition_y1 = check_condition_y1(g);

    let mut obstructions: Vec<Obstruction> = sinks.iter().cloned().map(Obstruction::Sink).collect();
    obstructions.extend(infinite_emitters.iter().cloned().map(Obstruction::InfiniteEmitter));
    if let Some(cx) = &condition_y.counterexample {
        obstructions.push(Obstruction::ConditionY {
            start: cx.start.clone(),
            k: cx.k,
        });
    }

    let mut reasons = vec![
        if sinks.is_empty() {
            "no sink".to_string()
        } else {
            format!("has {} sink(s)", sinks.len())
        },
        if row_finite {
            "row-finite".to_string()
        } else {
            format!("not row-finite ({} infinite emitter(s))", infinite_emitters.len())
        },
        format!("Condition (Y) {}", verdict_line(&condition_y)),
    ];
    reasons.extend(obstructions.iter().map(|o| format!("obstruction: {o}")));

    let strongly_graded = if !obstructions.is_empty() || condition_y.status == YStatus::Fails {
        Verdict::No
    } else if condition_y.status == YStatus::Unknown {
        Verdict::Unknown
    } else {
        Verdict::Yes
    };

    let witnesses = if strongly_graded == Verdict::Yes {
        build_witnesses(g, &witness_vertices(g))
    } else {
        Vec::new()
    };

    AnalysisReport {
        graph: g.summary(),
        row_finite,
        sinks,
        infinite_emitters,
        condition_y,
        condition_y1,
        strongly_graded,
        obstructions,
        reasons,
        witnesses,
    }
}

fn witness_vertices(g: &GraphSpec) -> Vec<Vertex> {
    match g {
        GraphSpec::Finite(f) => f.vertex_labels().to_vec(),
        GraphSpec::Ladder(l) => {
            let lo = match l.spine() {
                SpineKind::Nat => 0,
                SpineKind::Int => -WITNESS_COLUMNS,
            };
            let mut vs = Vec::new();
            for col in lo..=WITNESS_COLUMNS {
                vs.push(Vertex::Spine(col));
                for depth in 1..=l.tail_length(col).unwrap_or(0) {
                    vs.push(Vertex::Tail { col, depth });
                }
            }
            vs
        }
    }
}

fn witness_for(g: &GraphSpec, v: &Vertex) -> VertexWitness {
    let out = vertex_in_s1sm1(g, v).unwrap_or_default();
    let ok_out = !out.is_empty() && verify_s1sm1(g, v, &out);
    match vertex_in_sm1s1(g, v, DEFAULT_DEPTH_CAP) {
        Ok(dec) => {
            let verified = ok_out && verify_decomposition(g, &dec);
            VertexWitness {
                vertex: v.clone(),
                out_edges: out,
                decomposition: dec,
                verified,
            }
        }
        Err(_) => VertexWitness {
            vertex: v.clone(),
            out_edges: out,
            decomposition: TurningDecomposition {
                vertex: v.clone(),
                pairs: Vec::new(),
                k: 0,
            },
            verified: false,
        },
    }
}

/// Per-vertex witnesses, computed on scoped threads and returned in input
/// order.
fn build_witnesses(g: &GraphSpec, vs: &[Vertex]) -> Vec<VertexWitness> {
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(vs.len().max(1));
    let chunk = vs.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = vs
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|v| witness_for(g, v)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("witness worker panicked"))
            .collect()
    })
}
