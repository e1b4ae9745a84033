//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and fails if any
//! criterion fails. Criteria that depend on figure transcriptions are tagged
//! `figure-transcription` and are skipped when `HYPERBERNARDI_SKIP_TRANSCRIBED` is set.

use std::time::Instant;

use rayon::prelude::*;

use hyperbernardi::bernardi::{bernardi_interior, embedding_activities, run, ProcessVariant};
use hyperbernardi::graph::{Color, RibbonBipartiteGraph};
use hyperbernardi::harness::campaign::{self, fuzz, Check, Config, Context, FuzzConfig, Status};
use hyperbernardi::harness::fixtures;
use hyperbernardi::harness::random::{self, random_class_order, random_setup, Bounds};
use hyperbernardi::harness::registry::expect;
use hyperbernardi::harness::special::{check_arborescence_duality, check_noncrossing};
use hyperbernardi::hypertree::{enumerate_hypertrees, interior_polynomial, Hypertree, HypertreeSet};
use hyperbernardi::jaeger::{is_jaeger, jaeger_trees, matching_holds};
use hyperbernardi::oracle::brute_force_hypertrees;
use hyperbernardi::ordinary::{graph_specialization_check, tutte_check};
use hyperbernardi::polytope::{self, check_ehrhart, check_shelling, incompatible};
use hyperbernardi::tour::{spanning_trees, tour, tour_edge_order};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn passed(c: &Check) -> Result<(), String> {
    ensure(c.status == Status::Pass || c.status == Status::Skipped, format!("{}: {}", c.name, c.detail))
}

/// Per-instance results of the sweep, indexed by criterion.
#[derive(Default)]
struct InstanceResult {
    label: String,
    edges: usize,
    failures: Vec<(usize, String)>,
    runs: usize,
    tree_edges: usize,
    geometric: bool,
}

struct Sweep {
    instances: Vec<InstanceResult>,
    fix_a_setups: usize,
    random_graphs: usize,
}

fn sweep_graphs() -> (Vec<(String, RibbonBipartiteGraph)>, usize, usize) {
    let mut rng = random::rng(2024);
    let base = fixtures::fix_a();
    let mut out: Vec<(String, RibbonBipartiteGraph)> =
        (0..100).map(|i| (format!("fix-a setup {i}"), random_setup(&mut rng, &base))).collect();
    let mut seed = 0;
    let mut graphs = 0;
    while graphs < 50 {
        let g = random::random_instance(seed, Bounds::new(5, 5, 14)).unwrap();
        if g.node_count() <= 10 {
            out.push((format!("random seed {seed}"), g));
            graphs += 1;
        }
        seed += 1;
    }
    (out, 100, graphs)
}

fn check_instance(label: String, g: &RibbonBipartiteGraph) -> InstanceResult {
    let cx = Context::new(g);
    let cfg = Config { compatibility_max_edges: 0, ehrhart_max_edges: 0, ..Config::default() };
    let mut r = InstanceResult { label, edges: g.edge_count(), geometric: g.edge_count() <= 8, ..Default::default() };
    let mut fail = |k: usize, e: Result<(), String>| {
        if let Err(msg) = e {
            r.failures.push((k, msg));
        }
    };

    let interior = passed(&campaign::check_bernardi_interior(&cx));
    fail(2, interior);

    let (runs, outcomes) = campaign::check_runs(&cx);
    fail(3, passed(&runs));
    let mut runs_count = 0;
    for v in ProcessVariant::ALL {
        for f in &cx.sets[if v.hypertree_side == Color::Emerald { 0 } else { 1 }].list {
            match run(g, f, v) {
                Ok(res) => {
                    let mut cur = res.current_order();
                    cur.sort();
                    cur.dedup();
                    let realizes = hyperbernardi::hypertree::degree_vector(g, res.tree, f.side) == *f;
                    fail(3, ensure(cur.len() == g.edge_count() && realizes && g.is_spanning_tree(res.tree), format!("{v} on {}", f.literal(g))));
                }
                Err(e) => fail(3, Err(format!("{v}: {e}"))),
            }
            runs_count += 1;
        }
    }
    r.runs = runs_count;

    match &outcomes {
        Some(out) => {
            fail(4, passed(&campaign::check_outcomes_are_jaeger(&cx, out)));
            fail(5, passed(&campaign::check_bijection(&cx, out)));
        }
        None => {
            fail(4, Err("runs failed".into()));
            fail(5, Err("runs failed".into()));
        }
    }
    for cut in [Color::Emerald, Color::Violet] {
        let mut filtered: Vec<_> = spanning_trees(g).into_iter().filter(|t| is_jaeger(g, *t, cut)).collect();
        let mut direct = cx.jaeger[if cut == Color::Emerald { 0 } else { 1 }].clone();
        filtered.sort();
        direct.sort();
        fail(4, ensure(filtered == direct, format!("{cut}-cut enumeration differs from filtering all trees")));
    }

    let poly = campaign::polytope_checks(&cx, &cfg);
    fail(6, passed(&poly[0]));
    fail(7, passed(&poly[1]));

    fail(8, passed(&campaign::check_characterization(&cx)));
    r.tree_edges = cx.jaeger[1].len() * (g.node_count() - 1);

    fail(14, passed(&campaign::check_compositions(&cx)));
    r
}

fn build_sweep() -> Sweep {
    let (graphs, fix_a_setups, random_graphs) = sweep_graphs();
    let instances = graphs.into_par_iter().map(|(label, g)| check_instance(label, &g)).collect();
    Sweep { instances, fix_a_setups, random_graphs }
}

fn sweep_outcome(s: &Sweep, k: usize, what: &str) -> Outcome {
    for inst in &s.instances {
        if let Some((_, msg)) = inst.failures.iter().find(|(c, _)| *c == k) {
            return Err(format!("{} ({} edges): {msg}", inst.label, inst.edges));
        }
    }
    Ok(format!("{} instances ({} running-example setups, {} random graphs), {what}", s.instances.len(), s.fix_a_setups, s.random_graphs))
}

fn criterion_1() -> Outcome {
    let g = fixtures::fix_a();
    let want: Vec<i128> = expect("fix-a", "interior");
    let count: usize = expect("fix-a", "hypertree-count");
    let mut rng = random::rng(1);
    for side in [Color::Emerald, Color::Violet] {
        let n = enumerate_hypertrees(&g, side).len();
        ensure(n == count, format!("{n} hypertrees on {side}"))?;
        ensure(brute_force_hypertrees(&g, side).len() == count, "brute force count differs")?;
        ensure(interior_polynomial(&g, side, None).coeffs() == want, format!("interior on {side}"))?;
        for _ in 0..10 {
            let order = random_class_order(&mut rng, &g, side);
            let i = interior_polynomial(&g, side, Some(&order));
            ensure(i.coeffs() == want, format!("order changes interior on {side}: {i}"))?;
        }
    }
    Ok("7 hypertrees per side, I = 1 + 3x + 3x^2 for the default and 10 random orders per side".into())
}

fn criterion_2(s: &Sweep) -> Outcome {
    sweep_outcome(s, 2, "embedding interior equals interior on both sides")
}

fn criterion_3(s: &Sweep) -> Outcome {
    let runs: usize = s.instances.iter().map(|i| i.runs).sum();
    sweep_outcome(s, 3, &format!("{runs} runs, each edge current once, outcomes realize the input"))
}

fn criterion_4(s: &Sweep) -> Outcome {
    sweep_outcome(s, 4, "outcomes = recognized = enumerated Jaeger trees for all four processes")
}

fn criterion_5(s: &Sweep) -> Outcome {
    sweep_outcome(s, 5, "hypertrees to trees and B_E to B_V are bijections")
}

fn criterion_6(s: &Sweep) -> Outcome {
    let small = s.instances.iter().filter(|i| i.geometric).count();
    sweep_outcome(s, 6, &format!("markers in unique simplices, pairwise disjointness certified on {small} instances with at most 8 edges"))
}

fn criterion_7(s: &Sweep) -> Outcome {
    let g = fixtures::fix_a_shelling();
    let trees = jaeger_trees(&g, Color::Violet);
    let count: usize = expect("fix-a-shelling", "jaeger-count");
    ensure(trees.len() == count, format!("{} V-cut trees", trees.len()))?;
    ensure(trees == fixtures::fix_a_shelling_trees(&g), "tree order differs from the drawn list")?;
    let r = check_shelling(&g, &trees, &interior_polynomial(&g, Color::Emerald, None), true).map_err(|e| e.to_string())?;
    let h: Vec<i128> = expect("fix-a-shelling", "h-vector");
    ensure(r.ok() && r.h_vector.coeffs() == h, format!("h = {}", r.h_vector))?;
    let covered: Vec<usize> = expect("fix-a-shelling", "covered-facets");
    let sizes: Vec<usize> = r.covered_sets.unwrap_or_default().iter().map(|c| c.len()).collect();
    ensure(sizes == covered, format!("covered facets {sizes:?}"))?;
    let small = s.instances.iter().filter(|i| i.geometric).count();
    sweep_outcome(s, 7, "")?;
    Ok(format!("7 trees, h = (1, 3, 3), facet coverage exact; geometric coverage agrees on {small} sweep instances with at most 8 edges"))
}

fn criterion_8(s: &Sweep) -> Outcome {
    let n: usize = s.instances.iter().map(|i| i.tree_edges).sum();
    sweep_outcome(s, 8, &format!("{n} tree edges, five descriptions agree"))
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for (name, g, want) in [("fix-a", fixtures::fix_a(), vec![1, 3, 3]), ("c4", fixtures::c4(), vec![1, 1])] {
        let i = interior_polynomial(&g, Color::Emerald, None);
        let d = polytope::dimension(&g);
        let r = check_ehrhart(&g, &i, d + 5, 4).map_err(|e| e.to_string())?;
        ensure(r.fit_ok() && r.kato_ok() && r.oracle_ok(), format!("{name}: {r:?}"))?;
        ensure(r.fitted[..want.len()] == want[..] && r.fitted[want.len()..].iter().all(|a| *a == 0), format!("{name} fit {:?}", r.fitted))?;
        let reg: Vec<u128> = expect(name, "ehrhart");
        let n = reg.len().min(r.values.len());
        ensure(r.values[..n] == reg[..n], format!("{name} values {:?}", r.values))?;
        parts.push(format!("{name}: fit {:?} to order {}", &r.fitted[..want.len()], d + 5));
    }
    Ok(parts.join("; "))
}

fn criterion_10() -> Outcome {
    let g = fixtures::fix_a_shelling();
    let trees = fixtures::fix_a_shelling_trees(&g);
    let pair: (usize, usize) = expect("fix-a-shelling", "incompatible-pair");
    ensure(incompatible(&g, trees[pair.0], trees[pair.1]), "drawn pair is compatible")?;
    ensure(!polytope::geometrically_compatible(&g, trees[pair.0], trees[pair.1]), "geometry says compatible")?;
    let k = fixtures::k5();
    let (a, b) = fixtures::k5_trees(&k);
    ensure(is_jaeger(&k, a, Color::Violet) && is_jaeger(&k, b, Color::Violet), "K5 trees are not V-cut Jaeger trees")?;
    let want: bool = expect("k5", "drawn-pair-incompatible");
    ensure(incompatible(&k, a, b) == want, "K5 pair is compatible")?;
    Ok("running example trees #2 and #3 incompatible; K5 drawn pair incompatible".into())
}

fn criterion_11() -> Outcome {
    let counts: Vec<(usize, usize, usize)> = expect("noncrossing", "counts");
    for (m, n, c) in &counts {
        let r = check_noncrossing(*m, *n);
        ensure(r.ok() && r.jaeger == *c && r.noncrossing == *c, format!("K({m},{n}): {r:?}"))?;
    }
    for (name, g) in [("fix-a", fixtures::fix_a()), ("c4", fixtures::c4())] {
        let r = check_arborescence_duality(&g).map_err(|e| e.to_string())?;
        ensure(r.holds(), format!("{name}: {} arborescences vs {} trees", r.dual_trees.len(), r.jaeger.len()))?;
    }
    Ok(format!("non-crossing counts {:?} with set equality; arborescence duality on fix-a and c4", counts.iter().map(|c| c.2).collect::<Vec<_>>()))
}

fn ordinary_corpus() -> Vec<hyperbernardi::RibbonGraph> {
    (0..60).map(|s| random::random_ordinary(1000 + s, 6, 9).unwrap()).collect()
}

fn criterion_12() -> Outcome {
    let corpus = ordinary_corpus();
    let trees: usize = corpus
        .par_iter()
        .map(|h| {
            let g = h.subdivision();
            let he = HypertreeSet::new(&g, Color::Emerald);
            let hv = HypertreeSet::new(&g, Color::Violet);
            let ts = jaeger_trees(&g, Color::Violet);
            ts.iter().all(|t| matching_holds(&g, *t, &he, &hv)).then_some(ts.len()).ok_or_else(|| describe(h))
        })
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .sum();
    let g = fixtures::fig10();
    let t = fixtures::fig10_tree(&g);
    let he = HypertreeSet::new(&g, Color::Emerald);
    let hv = HypertreeSet::new(&g, Color::Violet);
    ensure(matching_holds(&g, t, &he, &hv), "matching example")?;
    Ok(format!("{} ordinary graphs, {trees} V-cut trees of their subdivisions", corpus.len()))
}

fn describe(h: &hyperbernardi::RibbonGraph) -> String {
    format!("ordinary graph with {} vertices and {} edges", h.node_count(), h.edge_count())
}

fn criterion_13() -> Outcome {
    let corpus = ordinary_corpus();
    let checked: usize = corpus
        .par_iter()
        .map(|h| {
            ensure(tutte_check(h).holds, format!("Tutte: {}", describe(h)))?;
            let ts = spanning_trees(h);
            for t in &ts {
                let r = graph_specialization_check(h, *t).map_err(|e| e.to_string())?;
                ensure(r.holds(), format!("specialization: {}", describe(h)))?;
            }
            Ok(ts.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .iter()
        .sum();
    let g = fixtures::fig2();
    let t = fixtures::fig2_tree(&g);
    let steps: Vec<String> = tour(&g, t).iter().map(|s| format!("{}{}", g.node_name(s.node), g.edge_name(s.edge))).collect();
    let want: Vec<String> = expect("fig2", "tour");
    ensure(steps == want, format!("tour {steps:?}"))?;
    let order: Vec<&str> = tour_edge_order(&g, t).iter().map(|e| g.edge_name(*e)).collect();
    let want_order: Vec<String> = expect("fig2", "edge-order");
    ensure(order == want_order, format!("order {order:?}"))?;
    let r = graph_specialization_check(&g, t).map_err(|e| e.to_string())?;
    ensure(r.holds() && r.tour_order == tour_edge_order(&g, t), "specialization on the tour example")?;
    Ok(format!("{} graphs, {checked} trees; tour {}", corpus.len(), want.join(",")))
}

fn criterion_14(s: &Sweep) -> Outcome {
    sweep_outcome(s, 14, "composition holds for every hypertree on E")
}

fn criterion_15() -> Outcome {
    let cfg = FuzzConfig { first_seed: 0, count: 500, bounds: Bounds::new(4, 4, 10), graphs_only: false, timing: false };
    let r = fuzz(&cfg).map_err(|e| e.to_string())?;
    ensure(r.failures.is_empty(), format!("{} theorem failures", r.failures.len()))?;
    if !r.counterexamples.is_empty() {
        println!("    flagged instances (re-verified by brute force):");
        for c in &r.counterexamples {
            println!("    {c}");
        }
    }
    let replay = fuzz(&cfg).map_err(|e| e.to_string())?;
    ensure(
        serde_json::to_string(&r).unwrap() == serde_json::to_string(&replay).unwrap(),
        "replay differs",
    )?;
    let graphs = FuzzConfig { graphs_only: true, bounds: Bounds::new(0, 5, 8), count: 100, ..cfg };
    let g = fuzz(&graphs).map_err(|e| e.to_string())?;
    ensure(g.failures.is_empty() && g.holds.interior_cut_opposite == 200, "graphs-only mode")?;
    Ok(format!(
        "500 instances, {} counterexamples (status {}); identities held on {}/{}/{} of 1000 sides; replay identical",
        r.counterexamples.len(),
        r.status.label(),
        r.holds.interior_cut_opposite,
        r.holds.exterior_cut_same,
        r.holds.exterior_cut_opposite
    ))
}

#[test]
fn worked_example_activities() {
    let g = fixtures::fix_b();
    let f = Hypertree::parse(&g, "left=1,top=0,right=2").unwrap();
    let a = embedding_activities(&g, &HypertreeSet::new(&g, Color::Emerald), &f, ProcessVariant::HTE_CUTE).unwrap();
    let want: (usize, usize) = expect("fix-b", "embedding-inactivities");
    assert_eq!((a.internal_inactive, a.external_inactive), want);
    assert_eq!(bernardi_interior(&g, Color::Emerald).unwrap(), interior_polynomial(&g, Color::Emerald, None));
}

#[test]
fn acceptance() {
    let skip_transcribed = std::env::var_os("HYPERBERNARDI_SKIP_TRANSCRIBED").is_some();
    let start = Instant::now();
    let sweep = build_sweep();
    println!("sweep built in {:.1}s", start.elapsed().as_secs_f64());
    type Crit<'a> = (usize, &'static str, bool, Box<dyn Fn() -> Outcome + 'a>);
    let s = &sweep;
    let criteria: Vec<Crit> = vec![
        (1, "running example interior polynomial", false, Box::new(criterion_1)),
        (2, "embedding interior equals interior", false, Box::new(move || criterion_2(s))),
        (3, "well-definedness of the processes", false, Box::new(move || criterion_3(s))),
        (4, "process outcomes are the Jaeger trees", false, Box::new(move || criterion_4(s))),
        (5, "unique realization and bijection", false, Box::new(move || criterion_5(s))),
        (6, "dissection of the root polytope", false, Box::new(move || criterion_6(s))),
        (7, "shelling order and h-vector", true, Box::new(move || criterion_7(s))),
        (8, "five descriptions of tree edges", false, Box::new(move || criterion_8(s))),
        (9, "Ehrhart values and interior polynomial", false, Box::new(criterion_9)),
        (10, "non-triangulation witnesses", true, Box::new(criterion_10)),
        (11, "non-crossing trees and arborescences", false, Box::new(criterion_11)),
        (12, "activity-preserving matching for graphs", false, Box::new(criterion_12)),
        (13, "graph specialization and Tutte polynomial", false, Box::new(criterion_13)),
        (14, "composition of processes", false, Box::new(move || criterion_14(s))),
        (15, "conjecture fuzz", false, Box::new(criterion_15)),
    ];
    let mut failed = Vec::new();
    for (k, title, transcribed, f) in &criteria {
        let tag = if *transcribed { " [figure-transcription]" } else { "" };
        if *transcribed && skip_transcribed {
            println!("SKIP {k:>2} {title}{tag}");
            continue;
        }
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {k:>2} {title}{tag}: {detail} ({:.1}s)", t.elapsed().as_secs_f64()),
            Err(msg) => {
                println!("FAIL {k:>2} {title}{tag}: {msg}");
                failed.push(*k);
            }
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
