//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use leavitt::cli::{corpus_rows, run_with};
use leavitt::corpus::{corpus, LADDER_ENTRIES};
use leavitt::graph::{FiniteGraph, GraphSpec, Vertex};
use leavitt::grading::{
    decompose_source, strong_grading_verdict, verify_decomposition, vertex_in_sm1s1,
    Obstruction, Verdict, DEFAULT_DEPTH_CAP,
};
use leavitt::koenig::{extract_thread, stabilized_cores, ExplicitLevels, LevelSystem};
use leavitt::lpa::{algebra_graph, Element, Lpa, Strategy};
use leavitt::path::{
    bad_path_levels, check_condition_y, check_condition_y1, in_path_lengths, Path, YReason,
    YStatus,
};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The finite suite: 200 random graphs (about half without sinks).
fn finite_suite() -> Vec<FiniteGraph> {
    let mut rng = rng(0x5eed);
    (0..200)
        .map(|i| random_graph(&mut rng, 6, 10, i % 2 == 0))
        .collect()
}

fn no_sink_suite() -> Vec<FiniteGraph> {
    let mut v: Vec<FiniteGraph> = finite_suite()
        .into_iter()
        .filter(|g| brute_sinks(g).is_empty())
        .collect();
    v.extend(
        fixtures()
            .into_iter()
            .map(|(_, g)| g)
            .filter(|g| brute_sinks(g).is_empty()),
    );
    v
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let rows = corpus_rows();
    let elapsed = started.elapsed();
    ensure(elapsed.as_secs_f64() < 5.0, || format!("took {elapsed:?}"))?;
    let ladder = &rows[..LADDER_ENTRIES];
    let names: Vec<&str> = ladder.iter().map(|r| r.entry.name).collect();
    ensure(names == ["A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K"], || {
        format!("unexpected order {names:?}")
    })?;
    for r in ladder {
        let y = &r.report.condition_y;
        let expect_holds = "ABCDEFG".contains(r.entry.name);
        ensure(r.entry.expected_y == expect_holds, || format!("{}: fixture expectation", r.entry.name))?;
        ensure(r.matches(), || format!("{}: got {}", r.entry.name, y.status))?;
        if expect_holds {
            ensure(
                matches!(y.reason, YReason::CycleCover | YReason::IntSpine | YReason::SlopeCriterion),
                || format!("{}: reason {}", r.entry.name, y.reason),
            )?;
            ensure(r.report.strongly_graded == Verdict::Yes, || format!("{}: not yes", r.entry.name))?;
        } else {
            let cx = y.counterexample.as_ref().ok_or(format!("{}: no counterexample", r.entry.name))?;
            ensure(cx.k >= 1, || "k = 0".into())?;
            ensure(r.report.strongly_graded == Verdict::No, || format!("{}: not no", r.entry.name))?;
        }
    }
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(["leavitt", "corpus"], &mut out, &mut err);
    let text = String::from_utf8(out).unwrap();
    ensure(code == 0 && text.contains("11/11"), || format!("cli exit {code}: {text}"))?;
    Ok(format!("11/11 matches in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let suite = finite_suite();
    let mut yes = 0;
    for (i, g) in suite.iter().enumerate() {
        let r = strong_grading_verdict(&GraphSpec::Finite(g.clone()));
        let expect = brute_sinks(g).is_empty();
        ensure((r.strongly_graded == Verdict::Yes) == expect, || {
            format!("graph {i}: verdict {} but sinks {:?}", r.strongly_graded, brute_sinks(g))
        })?;
        yes += expect as usize;
    }
    Ok(format!("{} graphs, {yes} without sinks, 0 mismatches", suite.len()))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for (i, g) in no_sink_suite().iter().enumerate() {
        let spec = GraphSpec::Finite(g.clone());
        for v in g.vertex_labels() {
            let full = decompose_source(&spec, v, DEFAULT_DEPTH_CAP).map_err(|e| format!("graph {i} {v}: {e}"))?;
            let short = vertex_in_sm1s1(&spec, v, DEFAULT_DEPTH_CAP).map_err(|e| format!("graph {i} {v}: {e}"))?;
            for dec in [&full, &short] {
                ensure(
                    dec.pairs.iter().all(|p| p.beta.len() == p.alpha.len() + 1),
                    || format!("graph {i} {v}: length mismatch"),
                )?;
                ensure(verify_decomposition(&spec, dec), || format!("graph {i} {v}: not verified"))?;
                checked += 1;
            }
        }
        let report = strong_grading_verdict(&spec);
        ensure(report.all_verified() && report.witnesses.len() == g.vertex_count(), || {
            format!("graph {i}: report witnesses incomplete")
        })?;
    }
    Ok(format!("{checked} decompositions, 100% verified"))
}

fn criterion_4() -> Outcome {
    let suite = no_sink_suite();
    let mut flips = 0;
    for (i, g) in suite.iter().enumerate() {
        let with_sink = add_sink(g);
        let r = strong_grading_verdict(&GraphSpec::Finite(with_sink.clone()));
        ensure(r.strongly_graded == Verdict::No, || format!("graph {i}: sink did not flip"))?;
        ensure(r.obstructions.contains(&Obstruction::Sink(Vertex::named("z"))), || {
            format!("graph {i}: sink obstruction missing: {:?}", r.obstructions)
        })?;
        let lpa = Lpa::new(&with_sink);
        let z = lpa.vertex(&Vertex::named("z")).unwrap();
        for e in with_sink.edge_indices() {
            ensure(lpa.multiply(&z, &lpa.edge_at(e)).is_empty(), || format!("graph {i}: z f != 0"))?;
        }
        let inf = add_infedges(g);
        let r = strong_grading_verdict(&GraphSpec::Finite(inf));
        ensure(r.strongly_graded == Verdict::No && !r.row_finite, || format!("graph {i}: infedges did not flip"))?;
        ensure(
            r.obstructions.contains(&Obstruction::InfiniteEmitter(g.vertex_labels()[0].clone())),
            || format!("graph {i}: emitter obstruction missing"),
        )?;
        flips += 2;
    }
    Ok(format!("{flips} flips to no with the named obstruction"))
}

fn algebra_suite() -> Vec<(String, FiniteGraph)> {
    let mut out: Vec<(String, FiniteGraph)> = corpus()
        .into_iter()
        .map(|e| (e.name.to_string(), algebra_graph(&e.spec, 4).into_owned()))
        .collect();
    out.extend(fixtures().into_iter().map(|(n, g)| (n.to_string(), g)));
    out
}

fn relations(name: &str, g: &FiniteGraph) -> Result<usize, String> {
    let lpa = Lpa::new(g);
    let mut n = 0;
    let fail = |what: &str| format!("{name}: {what}");
    for u in g.vertices() {
        for v in g.vertices() {
            let p = lpa.multiply(&lpa.vertex_at(u), &lpa.vertex_at(v));
            let want = if u == v { lpa.vertex_at(u) } else { Element::zero() };
            ensure(lpa.equals(&p, &want), || fail("uv"))?;
            n += 1;
        }
    }
    for e in g.edge_indices() {
        let (f, fs) = (lpa.edge_at(e), lpa.ghost_at(e));
        let (s, r) = (lpa.vertex_at(g.src(e)), lpa.vertex_at(g.dst(e)));
        ensure(lpa.equals(&lpa.multiply(&s, &f), &f), || fail("s(f) f"))?;
        ensure(lpa.equals(&lpa.multiply(&f, &r), &f), || fail("f r(f)"))?;
        ensure(lpa.equals(&lpa.multiply(&r, &fs), &fs), || fail("r(f) f*"))?;
        ensure(lpa.equals(&lpa.multiply(&fs, &s), &fs), || fail("f* s(f)"))?;
        for e2 in g.edge_indices() {
            let p = lpa.multiply(&fs, &lpa.edge_at(e2));
            let want = if e == e2 { r.clone() } else { Element::zero() };
            ensure(lpa.equals(&p, &want), || fail("f* f'"))?;
            n += 1;
        }
        n += 4;
    }
    for v in g.vertices() {
        let regular = !g.is_boundary(v) && !g.out_edges(v).is_empty() && !g.is_infinite_emitter(v);
        if regular {
            let sum: Element = g
                .out_edges(v)
                .iter()
                .map(|&f| lpa.multiply(&lpa.edge_at(f), &lpa.ghost_at(f)))
                .sum();
            ensure(lpa.equals(&sum, &lpa.vertex_at(v)), || fail("sum relation"))?;
            n += 1;
        }
    }
    Ok(n)
}

fn randomized_laws(name: &str, g: &FiniteGraph, seed: u64, count: usize) -> Result<(), String> {
    let lpa = Lpa::new(g);
    let paths = brute_paths(g, 2);
    let ranges: Vec<Vertex> = paths.iter().map(|p| brute_range(g, p)).collect();
    let mut rng = rng(seed);
    let fail = |what: &str, i: usize| format!("{name}: {what} (sample {i})");
    for i in 0..count {
        let x = lpa.normal_form(&random_element(&mut rng, &lpa, &paths, &ranges, 3));
        let y = lpa.normal_form(&random_element(&mut rng, &lpa, &paths, &ranges, 3));
        let z = lpa.normal_form(&random_element(&mut rng, &lpa, &paths, &ranges, 3));
        let xy = lpa.multiply(&x, &y);
        ensure(
            lpa.equals(&lpa.multiply(&xy, &z), &lpa.multiply(&x, &lpa.multiply(&y, &z))),
            || fail("associativity", i),
        )?;
        for n in xy.degrees() {
            let mut want = Element::zero();
            for a in x.degrees() {
                want = &want + &lpa.multiply(&x.degree_component(a), &y.degree_component(n - a));
            }
            ensure(lpa.equals(&xy.degree_component(n), &want), || fail("degree additivity", i))?;
        }
        ensure(lpa.equals(&xy.star(), &lpa.multiply(&y.star(), &x.star())), || {
            fail("star anti-multiplicativity", i)
        })?;
        // unreduced sum of monomial products
        let raw = random_element(&mut rng, &lpa, &paths, &ranges, 6);
        let a = lpa.normal_form_with(&raw, Strategy::Ordered);
        let b = lpa.normal_form_with(&raw, Strategy::Random(rng.gen()));
        ensure(a == b, || fail("two-strategy confluence", i))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let suite = algebra_suite();
    let mut rel = 0;
    for (name, g) in &suite {
        rel += relations(name, g)?;
    }
    for (i, (name, g)) in suite.iter().enumerate() {
        randomized_laws(name, g, 1000 + i as u64, 1000)?;
    }
    let mut ranks = 0;
    for (name, g) in fixtures() {
        rank_check(&g, 4).map_err(|e| format!("{name}: {e}"))?;
        ranks += 1;
    }
    Ok(format!(
        "{rel} relation instances on {} graphs; 1000 samples per law per graph; {ranks} rank checks",
        suite.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    let mut compared = 0;
    for i in 0..100 {
        let g = random_graph(&mut rng, 6, 10, i % 3 != 0);
        let n = g.vertex_count();
        let max = 2 * n * n + 4;
        let reach = brute_reach(&g, max);
        for v in g.vertices() {
            let set = in_path_lengths(&g, v);
            for (l, row) in reach.iter().enumerate().skip(1) {
                ensure(set.contains(l as u64) == row[v.index()], || {
                    format!("graph {i} vertex {}: length {l}", g.vertex(v))
                })?;
                compared += 1;
            }
        }
    }
    Ok(format!("100 graphs, {compared} memberships compared"))
}

fn criterion_7() -> Outcome {
    let mut rng = rng(7);
    let mut threads = 0;
    for i in 0..300 {
        let depth = rng.gen_range(1..=12);
        let (levels, maps) = random_levels(&mut rng, depth, true);
        let step = |n: usize, x: &u32| maps[n - 1][(*x - 100 * n as u32) as usize];
        let sys = ExplicitLevels::new(levels.clone(), step);
        let n = rng.gen_range(1..=depth);
        let oracle = product_search(&levels, |n, x| step(n, &x));
        let got = extract_thread(&sys, n);
        ensure(got.is_ok() == oracle.is_some(), || {
            format!("system {i}: thread {:?} vs product {:?}", got.is_ok(), oracle.is_some())
        })?;
        if let Ok(t) = got {
            ensure(t.len() == n && t.is_coherent(&sys), || format!("system {i}: incoherent"))?;
            let cores = stabilized_cores(&sys, n).unwrap();
            for m in 1..n {
                let image: BTreeSet<u32> = cores[m].iter().map(|x| sys.step(m, x)).collect();
                ensure(image == cores[m - 1], || format!("system {i}: g(Z_{}) != Z_{m}", m + 1))?;
            }
            for (m, x) in t.items().iter().enumerate() {
                ensure(sys.level(m + 1).unwrap().contains(x), || format!("system {i}: item off level"))?;
            }
            threads += 1;
        }
    }
    let h = &corpus()[7];
    ensure(h.name == "H", || "corpus order".into())?;
    let start = Vertex::Spine(0);
    let levels = bad_path_levels(&h.spec, &start, 21).map_err(|e| e.to_string())?;
    let sys = ExplicitLevels::new(levels, |_, p: &Path| p.parent());
    let cores = stabilized_cores(&sys, 20).map_err(|e| e.to_string())?;
    ensure(cores.iter().all(|z| z.len() == 1), || "H cores not singletons".into())?;
    let t = extract_thread(&sys, 20).map_err(|e| e.to_string())?;
    let spine: Vec<String> = (0..20).map(|i| format!("s[{i}]")).collect();
    let last: Vec<String> = t.last().unwrap().edges().iter().map(|e| e.to_string()).collect();
    ensure(last == spine, || format!("H thread ends at {last:?}"))?;
    Ok(format!("300 random systems ({threads} threads), H depth-20 thread matches the spine"))
}

/// No path of length `|V|` from any vertex has only non-turning prefixes,
/// searched with reachability from the raw edge list.
fn brute_y1_holds(g: &FiniteGraph) -> bool {
    let n = g.vertex_count();
    let reach = brute_reach(g, 2 * n + 2);
    let mut frontier: Vec<usize> = (0..n).collect();
    for len in 1..=n {
        let mut next = Vec::new();
        for &v in &frontier {
            for e in g.edges().iter().filter(|e| e.src.index() == v) {
                if !reach[len + 1][e.dst.index()] {
                    next.push(e.dst.index());
                }
            }
        }
        next.sort();
        next.dedup();
        frontier = next;
    }
    frontier.is_empty()
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for e in corpus() {
        let (y, y1) = (check_condition_y(&e.spec), check_condition_y1(&e.spec));
        ensure(y.status == y1.status, || format!("{}: {} vs {}", e.name, y.status, y1.status))?;
        n += 1;
    }
    for (i, g) in no_sink_suite().iter().enumerate() {
        let spec = GraphSpec::Finite(g.clone());
        let (y, y1) = (check_condition_y(&spec), check_condition_y1(&spec));
        ensure(y.status == y1.status && y.status == YStatus::Holds, || format!("finite graph {i}"))?;
        ensure(brute_y1_holds(g), || format!("finite graph {i}: brute search refutes (Y1)"))?;
        n += 1;
    }
    Ok(format!("{n} graphs, 0 disagreements"))
}

fn ladder_agrees(name: &str, l: &leavitt::graph::LadderSpec) -> Result<(), String> {
    const MAX_K: u64 = 6;
    let spec = GraphSpec::Ladder(l.clone());
    let y = check_condition_y(&spec);
    let y1 = check_condition_y1(&spec);
    let oracle = LadderOracle::new(l, MAX_K);
    let oracle_fails = (1..=MAX_K).any(|k| oracle.fails(k));
    ensure((y.status == YStatus::Fails) == oracle_fails, || {
        format!("{name}: criterion {} but oracle fails = {oracle_fails}", y.status)
    })?;
    if let Some(cx) = &y.counterexample {
        if cx.k <= MAX_K {
            ensure(oracle.fails_from(&cx.start, cx.k), || format!("{name}: k = {} not confirmed", cx.k))?;
            ensure(cx.k == 1 || !oracle.fails_from(&cx.start, cx.k - 1), || {
                format!("{name}: k = {} not minimal", cx.k)
            })?;
        }
    }
    ensure(y1.status == y.status, || format!("{name}: Y1 {}", y1.status))?;
    if let Some(cx) = &y1.counterexample {
        ensure(oracle.fails_from(&cx.start, 1), || format!("{name}: Y1 start {} not confirmed", cx.start))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for e in &corpus()[..LADDER_ENTRIES] {
        let GraphSpec::Ladder(l) = &e.spec else { unreachable!() };
        ladder_agrees(e.name, l)?;
    }
    let mut rng = rng(9);
    let mut fails = 0;
    for i in 0..60 {
        let l = random_ladder(&mut rng);
        ladder_agrees(&format!("random ladder {i} ({l:?})"), &l)?;
        fails += (check_condition_y(&GraphSpec::Ladder(l)).status == YStatus::Fails) as usize;
    }
    Ok(format!("11 corpus + 60 random ladders ({fails} failing), 0 disagreements"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("corpus reproduction", criterion_1),
        ("finite graphs: strongly graded iff no sink", criterion_2),
        ("constructive certification", criterion_3),
        ("necessity witnesses", criterion_4),
        ("engine soundness", criterion_5),
        ("in-path length sets", criterion_6),
        ("inverse-limit threads", criterion_7),
        ("Y and Y1 agree", criterion_8),
        ("ladder criterion vs bounded oracle", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = started.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e} [{t:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
