//! Strong grading reduces to `S_1 S_-1 = S_-1 S_1 = S_0`, together with
//! `S_n S_m ⊆ S_{n+m}`. This module spot-checks both on a finite graph.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{vertex_in_sm1s1, DEFAULT_DEPTH_CAP};
use crate::graph::{FiniteGraph, GraphSpec, VertexIdx};
use crate::lpa::{Element, IdxPath, Lpa, Monomial};

const MAX_DEGREE: i64 = 3;

/// All paths of length `len` in `g`, least first, at most `cap` of them.
pub(crate) fn paths_of_length(g: &FiniteGraph, len: usize, cap: usize) -> Vec<IdxPath> {
    let mut cur: Vec<IdxPath> = g.vertices().map(IdxPath::trivial).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        'outer: for p in &cur {
            for &e in g.out_edges(p.end()) {
                next.push(p.push(e, g.dst(e)));
                if next.len() >= cap {
                    break 'outer;
                }
            }
        }
        cur = next;
    }
    cur
}

/// Monomials `alpha beta*` with `|alpha|, |beta| <= max_len`, bucketed by
/// degree `-max_len..=max_len` (index `degree + max_len`).
fn monomials_by_degree(g: &FiniteGraph, max_len: usize) -> Vec<Vec<Monomial>> {
    let paths: Vec<Vec<IdxPath>> = (0..=max_len).map(|l| paths_of_length(g, l, 64)).collect();
    let mut buckets = vec![Vec::new(); 2 * max_len + 1];
    for a in paths.iter().flatten() {
        for b in paths.iter().flatten() {
            if let Some(m) = Monomial::new(a.clone(), b.clone()) {
                buckets[(m.degree() + max_len as i64) as usize].push(m);
            }
        }
    }
    buckets
}

fn random_homogeneous(rng: &mut StdRng, bucket: &[Monomial]) -> Element {
    let mut x = Element::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = bucket[rng.gen_range(0..bucket.len())].clone();
        let c: i64 = rng.gen_range(-3..=3);
        x.add_term(m, BigInt::from(c));
    }
    x
}

/// Checks, for a finite graph without sinks:
///
/// * products of random homogeneous elements of degrees `n, m` in
///   `-3..=3` are homogeneous of degree `n + m` (or zero), `samples` times
///   per degree pair;
/// * every normal-form monomial `z = alpha beta*` of degree 0 with
///   `|alpha| <= 2` equals `Σ_f f (f* z)` over the out-edges of `s(alpha)`
///   (a sum of products from `S_1 S_-1`) and `Σ_i (a_i b_i*)(b_i a_i* z)`
///   for the `S_-1 S_1` witness of `s(alpha)`.
///
/// Returns `false` for graphs with a sink or an infinite emitter, where the
/// reduction cannot hold.
pub fn degree_reduction_check(g: &FiniteGraph, samples: usize, seed: u64) -> bool {
    if g.sinks().next().is_some() || !g.is_row_finite() {
        return false;
    }
    let lpa = Lpa::new(g);
    let mut rng = StdRng::seed_from_u64(seed);
    let buckets = monomials_by_degree(g, MAX_DEGREE as usize);
    for n in -MAX_DEGREE..=MAX_DEGREE {
        for m in -MAX_DEGREE..=MAX_DEGREE {
            let (bn, bm) = (
                &buckets[(n + MAX_DEGREE) as usize],
                &buckets[(m + MAX_DEGREE) as usize],
            );
            if bn.is_empty() || bm.is_empty() {
                continue;
            }
            for _ in 0..samples {
                let x = lpa.normal_form(&random_homogeneous(&mut rng, bn));
                let y = lpa.normal_form(&random_homogeneous(&mut rng, bm));
                let p = lpa.multiply(&x, &y);
                if !p.is_empty() && p.is_homogeneous() != Some(n + m) {
                    return false;
                }
            }
        }
    }

    let spec = GraphSpec::Finite(g.clone());
    for len in 0..=2 {
        let paths = paths_of_length(g, len, 64);
        for a in &paths {
            for b in &paths {
                let Some(z) = Monomial::new(a.clone(), b.clone()) else { continue };
                let z = Element::monomial(z);
                if lpa.normal_form(&z) != z {
                    continue;
                }
                let s = a.start();
                let via_out: Element = g
                    .out_edges(s)
                    .iter()
                    .map(|&f| {
                        let fe = lpa.edge_at(f);
                        lpa.multiply(&fe, &lpa.multiply(&fe.star(), &z))
                    })
                    .sum();
                if !lpa.equals(&via_out, &z) {
                    return false;
                }
                let Some(w) = sm1s1_terms(&spec, &lpa, s) else {
                    return false;
                };
                if !lpa.equals(&w(&z), &z) {
                    return false;
                }
            }
        }
    }
    true
}

/// `z -> Σ_i (a_i b_i*)(b_i a_i* z)` for the witness of `v`.
fn sm1s1_terms<'a>(
    spec: &GraphSpec,
    lpa: &'a Lpa<'_>,
    v: VertexIdx,
) -> Option<impl Fn(&Element) -> Element + 'a> {
    let dec = vertex_in_sm1s1(spec, lpa.graph().vertex(v), DEFAULT_DEPTH_CAP).ok()?;
    let pairs: Vec<(Element, Element)> = dec
        .pairs
        .iter()
        .map(|p| Some((lpa.mono(&p.alpha, &p.beta).ok()?, lpa.mono(&p.beta, &p.alpha).ok()?)))
        .collect::<Option<_>>()?;
    Some(move |z: &Element| {
        pairs
            .iter()
            .map(|(down, up)| lpa.multiply(down, &lpa.multiply(up, z)))
            .sum()
    })
}
