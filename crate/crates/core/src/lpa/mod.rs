//! The Leavitt path algebra of a finite graph over the integers, as formal
//! combinations of monomials `alpha beta*`.
//!
//! Multiplication uses the rule for `(alpha beta*)(gamma delta*)` that
//! follows from `f* f' = δ r(f)`. The remaining relation
//! `v = Σ_{s(f)=v} f f*` is oriented as a rewrite: each vertex that emits
//! finitely many (and at least one) edges has a special edge, its least
//! out-edge `γ`, and a monomial `(α₀γ)(β₀γ)*` is replaced by
//! `α₀β₀* − Σ_{f≠γ} (α₀f)(β₀f)*`. Monomials with no such reducible end form a
//! basis, so normal forms are canonical and equality is structural.

mod element;
mod parse;

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::graph::{EdgeId, EdgeIdx, FiniteGraph, GraphError, GraphSpec, Vertex, VertexIdx};
use crate::path::Path;

pub use element::{Element, IdxPath, Monomial};
pub use parse::{ElementParseError, ParsedElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpaError {
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Order in which reducible terms are rewritten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always the least reducible term.
    Ordered,
    /// A pseudo-random reducible term, seeded.
    Random(u64),
}

/// Algebra context over one finite graph.
///
/// Boundary vertices of a ladder window, sinks and infinite emitters get no
/// special edge: the sum relation does not apply to them (for boundary
/// vertices, because their out-star is cut off by the window).
pub struct Lpa<'g> {
    graph: &'g FiniteGraph,
    special: Vec<Option<EdgeIdx>>,
}

impl<'g> Lpa<'g> {
    pub fn new(graph: &'g FiniteGraph) -> Self {
        let special = graph
            .vertices()
            .map(|v| {
                let reducible = !graph.is_sink(v)
                    && !graph.is_infinite_emitter(v)
                    && !graph.is_boundary(v);
                reducible.then(|| graph.out_edges(v)[0])
            })
            .collect();
        Lpa { graph, special }
    }

    pub fn graph(&self) -> &'g FiniteGraph {
        self.graph
    }

    /// The special edge of `v`, if the sum relation applies at `v`.
    pub fn special_edge(&self, v: VertexIdx) -> Option<EdgeIdx> {
        self.special[v.index()]
    }

    fn vertex_idx(&self, v: &Vertex) -> Result<VertexIdx, LpaError> {
        self.graph
            .vertex_idx(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()).into())
    }

    fn edge_idx(&self, e: &EdgeId) -> Result<EdgeIdx, LpaError> {
        self.graph
            .edge_idx(e)
            .ok_or_else(|| GraphError::UnknownEdge(e.clone()).into())
    }

    pub fn edge_path(&self, e: EdgeIdx) -> IdxPath {
        IdxPath::from_parts(self.graph.src(e), self.graph.dst(e), &[e])
    }

    /// Converts a labelled path, checking that it chains.
    pub fn idx_path(&self, p: &Path) -> Result<IdxPath, LpaError> {
        let start = self.vertex_idx(p.base())?;
        let mut cur = start;
        let mut edges = Vec::with_capacity(p.len());
        for (i, id) in p.edges().iter().enumerate() {
            let e = self.edge_idx(id)?;
            if self.graph.src(e) != cur {
                return Err(match i {
                    0 => GraphError::BadBase {
                        base: p.base().clone(),
                    },
                    _ => GraphError::BrokenPath(p.edges()[i - 1].clone(), id.clone()),
                }
                .into());
            }
            edges.push(e);
            cur = self.graph.dst(e);
        }
        Ok(IdxPath::from_parts(start, cur, &edges))
    }

    /// Converts back to labels.
    pub fn path(&self, p: &IdxPath) -> Path {
        Path::new(
            self.graph.vertex(p.start()).clone(),
            p.edges().iter().map(|&e| self.graph.edge(e).id.clone()).collect(),
        )
    }

    pub fn vertex(&self, v: &Vertex) -> Result<Element, LpaError> {
        Ok(self.vertex_at(self.vertex_idx(v)?))
    }

    pub fn vertex_at(&self, v: VertexIdx) -> Element {
        Element::monomial(Monomial::vertex(v))
    }

    pub fn edge(&self, e: &EdgeId) -> Result<Element, LpaError> {
        Ok(self.edge_at(self.edge_idx(e)?))
    }

    pub fn edge_at(&self, e: EdgeIdx) -> Element {
        let m = Monomial::new(self.edge_path(e), IdxPath::trivial(self.graph.dst(e)))
            .expect("ranges agree");
        Element::monomial(m)
    }

    pub fn ghost(&self, e: &EdgeId) -> Result<Element, LpaError> {
        Ok(self.edge(e)?.star())
    }

    pub fn ghost_at(&self, e: EdgeIdx) -> Element {
        self.edge_at(e).star()
    }

    /// `alpha beta*` in normal form; zero when the ranges differ.
    pub fn mono(&self, alpha: &Path, beta: &Path) -> Result<Element, LpaError> {
        let a = self.idx_path(alpha)?;
        let b = self.idx_path(beta)?;
        Ok(self.mono_idx(a, b))
    }

    pub fn mono_idx(&self, alpha: IdxPath, beta: IdxPath) -> Element {
        match Monomial::new(alpha, beta) {
            Some(m) => self.normal_form(&Element::monomial(m)),
            None => Element::zero(),
        }
    }

    /// Product in normal form.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            for (n, d) in y.terms() {
                if let Some(p) = m.mul(n) {
                    out.add_term(p, c * d);
                }
            }
        }
        self.normal_form(&out)
    }

    /// The special edge through which `m` reduces, if any.
    fn reducible_at(&self, m: &Monomial) -> Option<EdgeIdx> {
        let e = m.alpha().last_edge()?;
        if m.beta().last_edge() != Some(e) {
            return None;
        }
        let s = self.graph.src(e);
        (self.special[s.index()] == Some(e)).then_some(e)
    }

    /// One rewrite step applied to `m` (which must be reducible at `e`).
    fn expand(&self, m: &Monomial, e: EdgeIdx, c: &BigInt, into: &mut Element) {
        let s = self.graph.src(e);
        let a0 = m.alpha().pop(s);
        let b0 = m.beta().pop(s);
        into.add_term(
            Monomial::new(a0.clone(), b0.clone()).expect("both end at s(e)"),
            c.clone(),
        );
        for &f in self.graph.out_edges(s) {
            if f == e {
                continue;
            }
            let r = self.graph.dst(f);
            let m2 = Monomial::new(a0.push(f, r), b0.push(f, r)).expect("both end at r(f)");
            into.add_term(m2, -c);
        }
    }

    pub fn is_normal(&self, x: &Element) -> bool {
        x.terms().all(|(m, _)| self.reducible_at(m).is_none())
    }

    pub fn normal_form(&self, x: &Element) -> Element {
        self.normal_form_with(x, Strategy::Ordered)
    }

    pub fn normal_form_with(&self, x: &Element, strategy: Strategy) -> Element {
        match strategy {
            Strategy::Ordered => {
                let mut work = x.clone();
                let mut done = Element::zero();
                while let Some((m, c)) = work.pop_first() {
                    match self.reducible_at(&m) {
                        Some(e) => self.expand(&m, e, &c, &mut work),
                        None => done.add_term(m, c),
                    }
                }
                done
            }
            Strategy::Random(seed) => {
                let mut rng = StdRng::seed_from_u64(seed);
                let mut cur = x.clone();
                loop {
                    let reducible: Vec<(Monomial, EdgeIdx)> = cur
                        .terms()
                        .filter_map(|(m, _)| self.reducible_at(m).map(|e| (m.clone(), e)))
                        .collect();
                    if reducible.is_empty() {
                        return cur;
                    }
                    let (m, e) = &reducible[rng.gen_range(0..reducible.len())];
                    let c = cur.remove(m).expect("term is present");
                    self.expand(m, *e, &c, &mut cur);
                }
            }
        }
    }

    pub fn is_zero(&self, x: &Element) -> bool {
        self.normal_form(x).is_empty()
    }

    pub fn equals(&self, x: &Element, y: &Element) -> bool {
        self.normal_form(x) == self.normal_form(y)
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        self.normal_form(&(x + y))
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        self.normal_form(&(x - y))
    }

    fn render_path(&self, p: &IdxPath, out: &mut String) {
        if p.is_empty() {
            write!(out, "@{}", self.graph.vertex(p.start())).unwrap();
            return;
        }
        for (i, &e) in p.edges().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{}", self.graph.edge(e).id).unwrap();
        }
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        if m.alpha().is_empty() && m.beta().is_empty() {
            write!(out, "{}", self.graph.vertex(m.alpha().start())).unwrap();
        } else {
            out.push('(');
            self.render_path(m.alpha(), &mut out);
            out.push('|');
            self.render_path(m.beta(), &mut out);
            out.push(')');
        }
        out
    }

    /// Text in the element grammar, e.g. `3*(a b|c d) - v`.
    pub fn render(&self, x: &Element) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in x.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(out, "{abs}*").unwrap();
            }
            out.push_str(&self.render_monomial(m));
        }
        out
    }

    pub fn parse_element(&self, text: &str) -> Result<ParsedElement, ElementParseError> {
        parse::parse_element(self, text)
    }
}

/// The finite graph the algebra of `g` is computed on: `g` itself, or a
/// window of a ladder wide enough for every column up to `cols`.
pub fn algebra_graph(g: &GraphSpec, cols: u64) -> std::borrow::Cow<'_, FiniteGraph> {
    match g {
        GraphSpec::Finite(f) => std::borrow::Cow::Borrowed(f),
        GraphSpec::Ladder(l) => std::borrow::Cow::Owned(l.materialize_window(cols)),
    }
}
