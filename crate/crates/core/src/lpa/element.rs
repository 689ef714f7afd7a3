use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::graph::{EdgeIdx, VertexIdx};

/// A path of a finite graph in index form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdxPath {
    start: VertexIdx,
    end: VertexIdx,
    edges: SmallVec<[EdgeIdx; 6]>,
}

impl IdxPath {
    pub fn trivial(v: VertexIdx) -> Self {
        IdxPath {
            start: v,
            end: v,
            edges: SmallVec::new(),
        }
    }

    /// Caller guarantees the edges chain from `start` to `end`.
    pub(crate) fn from_parts(start: VertexIdx, end: VertexIdx, edges: &[EdgeIdx]) -> Self {
        IdxPath {
            start,
            end,
            edges: SmallVec::from_slice(edges),
        }
    }

    pub fn start(&self) -> VertexIdx {
        self.start
    }

    pub fn end(&self) -> VertexIdx {
        self.end
    }

    pub fn edges(&self) -> &[EdgeIdx] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<EdgeIdx> {
        self.edges.last().copied()
    }

    /// `self` is an initial segment of `other` (same start vertex).
    pub fn is_prefix_of(&self, other: &IdxPath) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// `self` followed by the part of `other` after its first `skip` edges.
    pub(crate) fn concat_suffix(&self, other: &IdxPath, skip: usize) -> IdxPath {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges[skip..]);
        IdxPath {
            start: self.start,
            end: if skip == other.len() { self.end } else { other.end },
            edges,
        }
    }

    /// Drops the last edge; `new_end` is its source.
    pub(crate) fn pop(&self, new_end: VertexIdx) -> IdxPath {
        let mut edges = self.edges.clone();
        edges.pop();
        IdxPath {
            start: self.start,
            end: new_end,
            edges,
        }
    }

    pub(crate) fn push(&self, e: EdgeIdx, new_end: VertexIdx) -> IdxPath {
        let mut edges = self.edges.clone();
        edges.push(e);
        IdxPath {
            start: self.start,
            end: new_end,
            edges,
        }
    }
}

impl Ord for IdxPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .cmp(&other.edges)
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for IdxPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The monomial `alpha beta*`, with `r(alpha) = r(beta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    alpha: IdxPath,
    beta: IdxPath,
}

impl Monomial {
    /// `None` when the ranges differ (the product is zero).
    pub fn new(alpha: IdxPath, beta: IdxPath) -> Option<Self> {
        (alpha.end == beta.end).then_some(Monomial { alpha, beta })
    }

    pub fn vertex(v: VertexIdx) -> Self {
        Monomial {
            alpha: IdxPath::trivial(v),
            beta: IdxPath::trivial(v),
        }
    }

    pub fn alpha(&self) -> &IdxPath {
        &self.alpha
    }

    pub fn beta(&self) -> &IdxPath {
        &self.beta
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// `(alpha beta*)(gamma delta*)`.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        let (a, b) = (&self.alpha, &self.beta);
        let (c, d) = (&other.alpha, &other.beta);
        if b.is_prefix_of(c) {
            Some(Monomial {
                alpha: a.concat_suffix(c, b.len()),
                beta: d.clone(),
            })
        } else if c.is_prefix_of(b) {
            Some(Monomial {
                alpha: a.clone(),
                beta: d.concat_suffix(b, c.len()),
            })
        } else {
            None
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.alpha.len() + self.beta.len())
            .cmp(&(other.alpha.len() + other.beta.len()))
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A formal integer combination of monomials. No zero coefficients are
/// stored. Whether the combination is in normal form depends on the graph;
/// see [`super::Lpa::normal_form`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No terms at all. This is the zero test only for normal forms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn pop_first(&mut self) -> Option<(Monomial, BigInt)> {
        self.terms.pop_first()
    }

    pub(crate) fn remove(&mut self, m: &Monomial) -> Option<BigInt> {
        self.terms.remove(m)
    }

    pub fn scale(&self, c: &BigInt) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// The involution `(alpha beta*)* = beta alpha*`.
    pub fn star(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect(),
        }
    }

    /// The terms of degree `n`.
    pub fn degree_component(&self, n: i64) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn is_homogeneous(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(Monomial::degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl std::iter::Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Element {
        iter.fold(Element::zero(), |a, b| a + b)
    }
}
