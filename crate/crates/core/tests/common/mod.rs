//! Generators and brute-force oracles shared by the integration tests.
//! Nothing here calls the analysis code under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use leavitt::graph::{
    parse_graph, ColumnPattern, EdgeId, FiniteGraph, GraphSpec, LadderSpec, SpineKind,
    TailFamily, Vertex,
};
use leavitt::lpa::{Element, Lpa, Monomial};
use leavitt::path::Path;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn finite(src: &str) -> FiniteGraph {
    match parse_graph(src).expect("fixture parses") {
        GraphSpec::Finite(f) => f,
        GraphSpec::Ladder(_) => panic!("expected a finite graph"),
    }
}

/// Named finite fixtures used across suites.
pub fn fixtures() -> Vec<(&'static str, FiniteGraph)> {
    vec![
        ("rose", finite("vertex v; edge e: v -> v;")),
        ("two_loops", finite("vertex v; edge e: v -> v; edge f: v -> v;")),
        ("two_cycle", finite("vertex u; vertex v; edge a: u -> v; edge b: v -> u;")),
        (
            "parallel",
            finite("vertex v; vertex w; edge f: v -> w; edge g: v -> w; edge h: w -> v;"),
        ),
        (
            "source_into_cycle",
            finite("vertex s; vertex u; vertex v; edge a: s -> u; edge b: u -> v; edge c: v -> u;"),
        ),
        (
            "with_sink",
            finite("vertex u; vertex v; vertex w; edge a: u -> v; edge b: v -> u; edge c: u -> w;"),
        ),
    ]
}

/// Random finite graph with `1..=max_v` vertices and at most `max_e` edges.
/// With `no_sink`, every vertex gets at least one out-edge first.
pub fn random_graph(rng: &mut StdRng, max_v: usize, max_e: usize, no_sink: bool) -> FiniteGraph {
    let n = rng.gen_range(1..=max_v);
    let mut b = FiniteGraph::builder();
    for i in 0..n {
        b.add_vertex(Vertex::named(format!("v{i}")));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if no_sink {
        for i in 0..n {
            edges.push((i, rng.gen_range(0..n)));
        }
    }
    let target = rng.gen_range(edges.len()..=max_e.max(edges.len()));
    while edges.len() < target {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for (k, (s, d)) in edges.into_iter().enumerate() {
        b.add_edge(
            EdgeId::named(format!("e{k}")),
            Vertex::named(format!("v{s}")),
            Vertex::named(format!("v{d}")),
        );
    }
    b.build().expect("random graph builds")
}

/// `g` plus a fresh sink `z` reached from the first vertex.
pub fn add_sink(g: &FiniteGraph) -> FiniteGraph {
    let mut b = g.to_builder();
    let first = g.vertex_labels()[0].clone();
    b.add_vertex(Vertex::named("z"));
    b.add_edge(EdgeId::named("to_z"), first, Vertex::named("z"));
    b.build().unwrap()
}

/// `g` with an infinite family of edges from its first vertex to itself.
pub fn add_infedges(g: &FiniteGraph) -> FiniteGraph {
    let mut b = g.to_builder();
    let first = g.vertex_labels()[0].clone();
    b.add_infinite_family(first.clone(), first);
    b.build().unwrap()
}

/// Sinks found from the raw edge list.
pub fn brute_sinks(g: &FiniteGraph) -> BTreeSet<Vertex> {
    let emitting: BTreeSet<_> = g.edges().iter().map(|e| e.src).collect();
    g.vertices()
        .filter(|v| !emitting.contains(v))
        .map(|v| g.vertex(v).clone())
        .collect()
}

/// `result[l][v]`: some path of length `l` ends at `v`, from powers of the
/// adjacency relation over the raw edge list.
pub fn brute_reach(g: &FiniteGraph, max_len: usize) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut out = vec![vec![true; n]];
    for _ in 0..max_len {
        let prev = out.last().unwrap();
        let mut next = vec![false; n];
        for e in g.edges() {
            if prev[e.src.index()] {
                next[e.dst.index()] = true;
            }
        }
        out.push(next);
    }
    out
}

/// All paths of length `<= max_len` as `(start, edges)`, by depth-first
/// enumeration over the raw edge list.
pub fn brute_paths(g: &FiniteGraph, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    fn go(g: &FiniteGraph, at: usize, p: Path, left: usize, out: &mut Vec<Path>) {
        out.push(p.clone());
        if left == 0 {
            return;
        }
        for e in g.edges() {
            if e.src.index() == at && !e.infinite_family {
                go(g, e.dst.index(), p.extended(e.id.clone()), left - 1, out);
            }
        }
    }
    for v in g.vertices() {
        go(g, v.index(), Path::trivial(g.vertex(v).clone()), max_len, &mut out);
    }
    out
}

/// Range of a path computed from the raw edge list.
pub fn brute_range(g: &FiniteGraph, p: &Path) -> Vertex {
    match p.edges().last() {
        None => p.base().clone(),
        Some(id) => {
            let rec = g.edges().iter().find(|e| &e.id == id).expect("edge exists");
            g.vertex(rec.dst).clone()
        }
    }
}

/// The monomial `a b*` as written, without normalizing.
pub fn raw_mono(lpa: &Lpa<'_>, a: &Path, b: &Path) -> Monomial {
    Monomial::new(lpa.idx_path(a).unwrap(), lpa.idx_path(b).unwrap()).expect("equal ranges")
}

/// A random unreduced combination of monomials `a b*` over `paths`.
pub fn random_element(
    rng: &mut StdRng,
    lpa: &Lpa<'_>,
    paths: &[Path],
    ranges: &[Vertex],
    terms: usize,
) -> Element {
    let mut x = Element::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let i = rng.gen_range(0..paths.len());
        let same: Vec<usize> = (0..paths.len()).filter(|&j| ranges[j] == ranges[i]).collect();
        let j = same[rng.gen_range(0..same.len())];
        let c = BigInt::from(rng.gen_range(-3i64..=3));
        x.add_term(raw_mono(lpa, &paths[i], &paths[j]), c);
    }
    x
}

/// Single monomial of an element that has exactly one term.
pub fn only_monomial(x: &Element) -> Monomial {
    let mut it = x.terms();
    let (m, _) = it.next().expect("one term");
    assert!(it.next().is_none());
    m.clone()
}

// ---------------------------------------------------------------------------
// Linear algebra mod a prime

pub const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn to_field(c: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = ((c % &p) + &p) % &p;
    u64::try_from(r).unwrap()
}

pub type SparseVec = BTreeMap<usize, u64>;

/// Sparse row echelon basis, pivot = largest index.
#[derive(Default)]
pub struct Echelon {
    rows: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Cancels leading entries against the basis until the leading entry has
    /// no pivot row. The result is empty iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        while let Some((&piv, &c)) = v.iter().next_back() {
            let Some(row) = self.rows.get(&piv) else { break };
            // row is normalized to 1 at its pivot
            for (&i, &r) in row {
                let cur = v.get(&i).copied().unwrap_or(0);
                let new = (cur + P - mulmod(c, r)) % P;
                if new == 0 {
                    v.remove(&i);
                } else {
                    v.insert(i, new);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        match v.iter().next_back() {
            None => false,
            Some((&piv, &c)) => {
                let ic = inv(c);
                let row = v.into_iter().map(|(i, x)| (i, mulmod(x, ic))).collect();
                self.rows.insert(piv, row);
                true
            }
        }
    }
}

/// Independent check of the normal form on the span of monomials
/// `alpha beta*` with `|alpha|, |beta| <= max_len`.
///
/// The relation space is spanned by `alpha beta* - Σ_f (alpha f)(beta f)*`
/// over regular vertices, with `|alpha|, |beta| < max_len`. The quotient
/// dimension must equal the number of monomials the engine calls normal,
/// and every monomial must differ from its normal form by a relation.
pub fn rank_check(g: &FiniteGraph, max_len: usize) -> Result<(usize, usize), String> {
    let lpa = Lpa::new(g);
    let paths = brute_paths(g, max_len);
    let ranges: Vec<Vertex> = paths.iter().map(|p| brute_range(g, p)).collect();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut monos: Vec<Monomial> = Vec::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    for i in 0..paths.len() {
        for j in 0..paths.len() {
            if ranges[i] == ranges[j] {
                order.push((i, j));
            }
        }
    }
    order.sort_by_key(|&(i, j)| paths[i].len() + paths[j].len());
    for (i, j) in order {
        let m = raw_mono(&lpa, &paths[i], &paths[j]);
        index.insert(m.clone(), monos.len());
        monos.push(m);
    }
    let regular = |v: &Vertex| {
        let idx = g.vertex_idx(v).unwrap();
        !g.is_boundary(idx)
            && g.edges().iter().any(|e| e.src == idx)
            && g.edges().iter().all(|e| e.src != idx || !e.infinite_family)
    };
    let out_of = |v: &Vertex| -> Vec<EdgeId> {
        g.edges()
            .iter()
            .filter(|e| g.vertex(e.src) == v)
            .map(|e| e.id.clone())
            .collect()
    };
    let mut rel = Echelon::default();
    for i in 0..paths.len() {
        for j in 0..paths.len() {
            let (a, b) = (&paths[i], &paths[j]);
            if ranges[i] != ranges[j] || a.len() >= max_len || b.len() >= max_len {
                continue;
            }
            if !regular(&ranges[i]) {
                continue;
            }
            let mut v = SparseVec::new();
            let key = |p: &Path, q: &Path| index[&raw_mono(&lpa, p, q)];
            v.insert(key(a, b), 1);
            for f in out_of(&ranges[i]) {
                let k = key(&a.extended(f.clone()), &b.extended(f));
                *v.entry(k).or_insert(0) = (v.get(&k).copied().unwrap_or(0) + P - 1) % P;
            }
            v.retain(|_, c| *c != 0);
            rel.insert(v);
        }
    }
    let quotient = monos.len() - rel.rank();
    let normal = monos
        .iter()
        .filter(|m| lpa.is_normal(&Element::monomial((*m).clone())))
        .count();
    if quotient != normal {
        return Err(format!("quotient dimension {quotient} but {normal} normal monomials"));
    }
    for m in &monos {
        let nf = lpa.normal_form(&Element::monomial(m.clone()));
        let mut v = SparseVec::new();
        v.insert(index[m], 1);
        for (t, c) in nf.terms() {
            let k = *index
                .get(t)
                .ok_or_else(|| format!("normal form leaves the truncated space: {}", lpa.render(&nf)))?;
            let e = v.entry(k).or_insert(0);
            *e = (*e + P - to_field(c)) % P;
        }
        v.retain(|_, c| *c != 0);
        if !rel.contains(v) {
            return Err(format!(
                "{} minus its normal form {} is not a relation",
                lpa.render_monomial(m),
                lpa.render(&nf)
            ));
        }
    }
    Ok((monos.len(), quotient))
}

// ---------------------------------------------------------------------------
// Ladders

pub fn random_ladder(rng: &mut StdRng) -> LadderSpec {
    let spine = if rng.gen_bool(0.15) { SpineKind::Int } else { SpineKind::Nat };
    let loops = match rng.gen_range(0..10) {
        0 => ColumnPattern::All,
        1 => ColumnPattern::From {
            start: rng.gen_range(0..4),
            step: rng.gen_range(1..4),
        },
        2 => ColumnPattern::Cols((0..rng.gen_range(1..3)).map(|_| rng.gen_range(0..6)).collect()),
        _ => ColumnPattern::None,
    };
    let tails = (0..rng.gen_range(0..3))
        .map(|_| {
            let step = rng.gen_range(1..=3u64);
            TailFamily {
                start: rng.gen_range(0..=3),
                step,
                slope: rng.gen_range(0..=step + 1),
                offset: rng.gen_range(1..=3),
            }
        })
        .collect();
    let exceptions = (0..rng.gen_range(0..2))
        .map(|_| (rng.gen_range(0..=4i64), rng.gen_range(1..=6u64)))
        .collect();
    LadderSpec::new(spine, loops, tails, exceptions).expect("generated ladder is valid")
}

/// Bounded oracle for Condition (Y) on a ladder, computed on an explicit
/// window built from the ladder's column data and searched exhaustively.
pub struct LadderOracle {
    lo: i64,
    hi: i64,
    spine: SpineKind,
    names: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    succ: Vec<Vec<usize>>,
    is_top: Vec<bool>,
    /// Bit `l` of `lengths[v]`: some window path of length `l` ends at `v`.
    lengths: Vec<Vec<u64>>,
    max_len: usize,
}

fn shift_or(dst: &mut [u64], src: &[u64]) {
    let mut carry = 0;
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= (s << 1) | carry;
        carry = s >> 63;
    }
}

impl LadderOracle {
    /// Window half-width for offsets `k <= max_k`.
    pub fn window(l: &LadderSpec, max_k: u64) -> i64 {
        let e = l.exceptions().keys().map(|c| c.abs()).max().unwrap_or(0);
        let b = l.tails().iter().map(|f| f.offset.abs()).max().unwrap_or(0);
        let start = l.tails().iter().map(|f| f.start.abs()).max().unwrap_or(0);
        let step = l.tails().iter().map(|f| f.step as i64).max().unwrap_or(1);
        let base = 4 * (max_k as i64 + e + b + 4);
        base.max(4 * (start + e + step * (max_k as i64 + 2) + 4))
    }

    pub fn new(l: &LadderSpec, max_k: u64) -> Self {
        let w = Self::window(l, max_k);
        let (lo, hi) = match l.spine() {
            SpineKind::Nat => (0, w),
            SpineKind::Int => (-w, w),
        };
        let max_tail = (lo..=hi).filter_map(|c| l.tail_length(c)).max().unwrap_or(0) as i64;
        let max_len = (max_tail + 2 * (hi - lo) + max_k as i64 + 2) as usize;
        let words = max_len / 64 + 1;
        let mut names = Vec::new();
        let mut succ: Vec<Vec<usize>> = Vec::new();
        let mut is_top = Vec::new();
        let mut lengths: Vec<Vec<u64>> = Vec::new();
        let mut index = HashMap::new();
        let mut prev_spine: Option<usize> = None;
        // columns left to right; inside a column the tail top first, so
        // every in-neighbour is finished before its target (loops aside)
        for c in lo..=hi {
            let len = l.tail_length(c).unwrap_or(0);
            let mut above: Option<usize> = None;
            for depth in (1..=len).rev() {
                let t = names.len();
                names.push(Vertex::Tail { col: c, depth });
                succ.push(Vec::new());
                is_top.push(depth == len);
                let mut bits = vec![0u64; words];
                bits[0] |= 1;
                if let Some(a) = above {
                    succ[a].push(t);
                    let src = lengths[a].clone();
                    shift_or(&mut bits, &src);
                }
                lengths.push(bits);
                above = Some(t);
            }
            let u = names.len();
            names.push(Vertex::Spine(c));
            succ.push(Vec::new());
            is_top.push(false);
            let mut bits = vec![0u64; words];
            bits[0] |= 1;
            for from in [prev_spine, above].into_iter().flatten() {
                succ[from].push(u);
                let src = lengths[from].clone();
                shift_or(&mut bits, &src);
            }
            if l.has_loop(c) {
                succ[u].push(u);
                loop {
                    let before = bits.clone();
                    shift_or(&mut bits, &before);
                    if bits == before {
                        break;
                    }
                }
            }
            lengths.push(bits);
            prev_spine = Some(u);
        }
        for (i, v) in names.iter().enumerate() {
            index.insert(v.clone(), i);
        }
        LadderOracle {
            lo,
            hi,
            spine: l.spine(),
            names,
            index,
            succ,
            is_top,
            lengths,
            max_len,
        }
    }

    fn admits(&self, v: usize, len: usize) -> bool {
        assert!(len <= self.max_len, "length table too short");
        self.lengths[v][len / 64] >> (len % 64) & 1 == 1
    }

    fn column(&self, v: usize) -> i64 {
        match self.names[v] {
            Vertex::Spine(c) | Vertex::Tail { col: c, .. } => c,
            Vertex::Named(_) => unreachable!(),
        }
    }

    /// Start vertices: spine vertices and tail tops in the left half of the
    /// window. For an int spine the leftmost quarter is skipped, since the
    /// window cuts off in-paths there.
    pub fn starts(&self) -> Vec<Vertex> {
        let mid = self.lo + (self.hi - self.lo) / 2;
        let first = match self.spine {
            SpineKind::Nat => self.lo,
            SpineKind::Int => self.lo + (self.hi - self.lo) / 4,
        };
        (0..self.names.len())
            .filter(|&i| (first..=mid).contains(&self.column(i)))
            .filter(|&i| matches!(self.names[i], Vertex::Spine(_)) || self.is_top[i])
            .map(|i| self.names[i].clone())
            .collect()
    }

    /// Some path from `start` reaches the right quarter of the window with
    /// every nonempty prefix `alpha` lacking an in-path of length
    /// `|alpha| + k` at its range.
    pub fn fails_from(&self, start: &Vertex, k: u64) -> bool {
        let goal = self.hi - (self.hi - self.lo) / 4;
        let mut frontier: BTreeSet<usize> = BTreeSet::from([self.index[start]]);
        let mut len = 0usize;
        while !frontier.is_empty() {
            if frontier
                .iter()
                .any(|&v| matches!(self.names[v], Vertex::Spine(c) if c >= goal))
            {
                return true;
            }
            len += 1;
            let mut next = BTreeSet::new();
            for &v in &frontier {
                for &d in &self.succ[v] {
                    if !self.admits(d, len + k as usize) {
                        next.insert(d);
                    }
                }
            }
            frontier = next;
        }
        false
    }

    pub fn fails(&self, k: u64) -> bool {
        self.starts().iter().any(|s| self.fails_from(s, k))
    }
}

// ---------------------------------------------------------------------------
// Level systems

/// Random explicit levels: `sizes[n]` items at level `n + 1`, each mapped to
/// a random item of the level below.
pub fn random_levels(rng: &mut StdRng, depth: usize, allow_empty: bool) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut levels = Vec::new();
    let mut maps = Vec::new();
    for n in 0..depth {
        let lo = if allow_empty && rng.gen_bool(0.1) { 0 } else { 1 };
        let size = rng.gen_range(lo..=8);
        levels.push((0..size as u32).map(|i| i + 100 * n as u32).collect::<Vec<_>>());
        if n > 0 {
            let below: &Vec<u32> = &levels[n - 1];
            let map = (0..size)
                .map(|_| {
                    if below.is_empty() {
                        0
                    } else {
                        below[rng.gen_range(0..below.len())]
                    }
                })
                .collect();
            maps.push(map);
        }
    }
    (levels, maps)
}

/// Depth-first search of `X_1 × ... × X_d` for a coherent tuple.
pub fn product_search(levels: &[Vec<u32>], step: impl Fn(usize, u32) -> u32) -> Option<Vec<u32>> {
    fn go(
        levels: &[Vec<u32>],
        step: &dyn Fn(usize, u32) -> u32,
        acc: &mut Vec<u32>,
    ) -> bool {
        let n = acc.len();
        if n == levels.len() {
            return true;
        }
        for &x in &levels[n] {
            if n > 0 && step(n, x) != acc[n - 1] {
                continue;
            }
            acc.push(x);
            if go(levels, step, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(levels, &step, &mut acc).then_some(acc)
}
