//! Verification campaigns over one graph, and seeded fuzzing of the conjectured identities.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bernardi::{self, check_composition, check_conjectures_with, tour_listing, ConjectureReport, ProcessVariant};
use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::format::{sha256_hex, write_graph};
use crate::graph::{Color, RibbonBipartiteGraph};
use crate::harness::random::{self, random_class_order, Bounds};
use crate::harness::special::check_arborescence_duality;
use crate::hypertree::{
    degree_vector, enumerate_hypertrees, enumerate_hypertrees_by_search, exterior_polynomial, interior_polynomial,
    is_hypertree, HypertreeSet,
};
use crate::jaeger::{characterize_edge, jaeger_trees, matching_holds, recognized_jaeger_trees};
use crate::oracle::{brute_force_hypertrees, kirchhoff_count};
use crate::ordinary::{break_divisors, graph_specialization_check, tutte_check};
use crate::poly::IntegerPolynomial;
use crate::polytope;
use crate::tour::spanning_trees;

pub const TOOL_VERSION: &str = concat!("hyperbernardi ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "CONJECTURE-COUNTEREXAMPLE?")]
    Counterexample,
    #[serde(rename = "fail")]
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Skipped => 0,
            Status::Fail => 1,
            Status::Counterexample => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Skipped => "skipped",
            Status::Counterexample => "CONJECTURE-COUNTEREXAMPLE?",
            Status::Fail => "FAIL",
        }
    }
}

/// Worst status of a list: a failure dominates a counterexample, which dominates a pass.
pub fn overall<'a>(statuses: impl IntoIterator<Item = &'a Status>) -> Status {
    statuses.into_iter().copied().filter(|s| *s != Status::Skipped).max().unwrap_or(Status::Pass)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>, witness: Option<Value>) -> Check {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check { name, status, detail: detail.into(), witness: if ok { None } else { witness } }
    }

    fn skipped(name: &'static str, reason: impl Into<String>) -> Check {
        Check { name, status: Status::Skipped, detail: reason.into(), witness: None }
    }
}

fn guarded(name: &'static str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::new(name, false, e.to_string(), None))
}

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub seed: u64,
    /// Graphs with more edges are refused.
    pub max_edges: usize,
    pub random_orders: usize,
    pub brute_force_max_edges: usize,
    /// Pairwise disjointness and facet coverage are decided by exact LPs up to this size.
    pub geometric_max_edges: usize,
    pub compatibility_max_edges: usize,
    pub ehrhart_max_edges: usize,
    pub lattice_oracle_max_edges: usize,
    pub specialization_max_trees: usize,
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            max_edges: 14,
            random_orders: 10,
            brute_force_max_edges: 16,
            geometric_max_edges: 8,
            compatibility_max_edges: 6,
            ehrhart_max_edges: 10,
            lattice_oracle_max_edges: 6,
            specialization_max_trees: 200,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub emerald: usize,
    pub violet: usize,
    pub edges: usize,
    pub genus: usize,
    pub parallel_edges: bool,
    pub subdivision: bool,
}

impl GraphSummary {
    pub fn of(g: &RibbonBipartiteGraph) -> Self {
        GraphSummary {
            emerald: g.class_size(Color::Emerald),
            violet: g.class_size(Color::Violet),
            edges: g.edge_count(),
            genus: g.genus(),
            parallel_edges: g.has_parallel_edges(),
            subdivision: g.unsubdivide().is_some(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub tool_version: &'static str,
    pub seed: u64,
    pub input_hash: String,
    pub graph: GraphSummary,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CampaignReport {
    pub fn summary(&self) -> String {
        let mut s = format!("{} seed={} input={}\n", self.tool_version, self.seed, &self.input_hash[..16]);
        for c in &self.checks {
            s += &format!("{:<28} {:<26} {}\n", c.name, c.status.label(), c.detail);
        }
        s += &format!("overall: {}\n", self.status.label());
        s
    }
}

/// Hash of the canonical document of a graph.
pub fn graph_hash(g: &RibbonBipartiteGraph) -> String {
    sha256_hex(write_graph(g).as_bytes())
}

fn idx(c: Color) -> usize {
    match c {
        Color::Emerald => 0,
        Color::Violet => 1,
    }
}

const SIDES: [Color; 2] = [Color::Emerald, Color::Violet];

/// Shared enumerations for the checks on one graph.
pub struct Context<'a> {
    pub g: &'a RibbonBipartiteGraph,
    pub sets: [HypertreeSet; 2],
    /// Jaeger trees in tree order, by cut color.
    pub jaeger: [Vec<EdgeSet>; 2],
    pub interior: [IntegerPolynomial; 2],
}

impl<'a> Context<'a> {
    pub fn new(g: &'a RibbonBipartiteGraph) -> Self {
        let sets = SIDES.map(|s| HypertreeSet::new(g, s));
        let jaeger = SIDES.map(|c| jaeger_trees(g, c));
        let interior = SIDES.map(|s| interior_polynomial(g, s, None));
        Context { g, sets, jaeger, interior }
    }

    fn names(&self, t: EdgeSet) -> Vec<&str> {
        t.iter().map(|e| self.g.edge_name(e)).collect()
    }
}

/// Runs every check that applies to `g`. Theorem failures are reported as `fail`; a mismatch
/// in a conjectured identity that survives re-verification is flagged separately.
pub fn verify_all(g: &RibbonBipartiteGraph, cfg: &Config) -> Result<CampaignReport> {
    if g.edge_count() > cfg.max_edges {
        return Err(Error::Input(format!(
            "graph has {} edges, over the campaign limit of {}; raise it with --max-edges",
            g.edge_count(),
            cfg.max_edges
        )));
    }
    let start = Instant::now();
    let cx = Context::new(g);
    let mut rng = random::rng(cfg.seed);
    let mut checks = vec![
        check_enumeration(&cx, cfg),
        check_count_symmetry(&cx),
        check_order_independence(&cx, cfg, &mut rng),
        check_interior_properties(&cx),
    ];
    let (runs, outcomes) = check_runs(&cx);
    checks.push(runs);
    if let Some(out) = &outcomes {
        checks.push(check_outcomes_are_jaeger(&cx, out));
        checks.push(check_bijection(&cx, out));
    }
    checks.push(check_bernardi_interior(&cx));
    checks.push(check_compositions(&cx));
    checks.push(check_reversal(&cx));
    checks.push(check_characterization(&cx));
    checks.extend(polytope_checks(&cx, cfg));
    checks.extend(ordinary_checks(&cx, cfg));
    checks.push(check_arborescence(&cx));
    checks.push(check_conjecture_identities(&cx));
    Ok(CampaignReport {
        tool_version: TOOL_VERSION,
        seed: cfg.seed,
        input_hash: graph_hash(g),
        graph: GraphSummary::of(g),
        status: overall(checks.iter().map(|c| &c.status)),
        checks,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

pub fn check_enumeration(cx: &Context, cfg: &Config) -> Check {
    let g = cx.g;
    let brute = g.edge_count() <= cfg.brute_force_max_edges;
    for s in SIDES {
        let sweep = &cx.sets[idx(s)].list;
        if enumerate_hypertrees_by_search(g, s) != *sweep {
            return Check::new("hypertrees.enumeration", false, format!("search and sweep differ on {s}"), None);
        }
        if let Some(f) = sweep.iter().find(|f| !is_hypertree(g, f)) {
            return Check::new(
                "hypertrees.enumeration",
                false,
                format!("membership test rejects an enumerated hypertree on {s}"),
                Some(json!(f.literal(g))),
            );
        }
        if brute && brute_force_hypertrees(g, s) != *sweep {
            return Check::new("hypertrees.enumeration", false, format!("brute force differs on {s}"), None);
        }
    }
    let detail = format!(
        "|B_E|={} |B_V|={}{}",
        cx.sets[0].len(),
        cx.sets[1].len(),
        if brute { ", brute force agrees" } else { "" }
    );
    Check::new("hypertrees.enumeration", true, detail, None)
}

pub fn check_count_symmetry(cx: &Context) -> Check {
    let (a, b) = (cx.sets[0].len(), cx.sets[1].len());
    Check::new("hypertrees.count-symmetry", a == b, format!("{a} vs {b}"), None)
}

pub fn check_order_independence(cx: &Context, cfg: &Config, rng: &mut impl rand::Rng) -> Check {
    let g = cx.g;
    for s in SIDES {
        let ext = exterior_polynomial(g, s, None);
        for _ in 0..cfg.random_orders {
            let order = random_class_order(rng, g, s);
            let i = interior_polynomial(g, s, Some(&order));
            let x = exterior_polynomial(g, s, Some(&order));
            if i != cx.interior[idx(s)] || x != ext {
                let names: Vec<&str> = order.iter().map(|x| g.node_name(*x)).collect();
                return Check::new(
                    "interior.order-independence",
                    false,
                    format!("order on {s} changes the polynomials"),
                    Some(json!({"order": names, "interior": i, "exterior": x})),
                );
            }
        }
    }
    Check::new("interior.order-independence", true, format!("{} random orders per side", cfg.random_orders), None)
}

pub fn check_interior_properties(cx: &Context) -> Check {
    let g = cx.g;
    let bound = g.class_size(Color::Emerald).min(g.class_size(Color::Violet)) - 1;
    for s in SIDES {
        let i = &cx.interior[idx(s)];
        let ok = i.coeff(0) == 1 && i.eval_at_one() == cx.sets[idx(s)].len() as i128 && i.degree().unwrap_or(0) <= bound;
        if !ok {
            return Check::new("interior.properties", false, format!("I on {s} is {i}"), None);
        }
    }
    let same = cx.interior[0] == cx.interior[1];
    Check::new(
        "interior.properties",
        same,
        format!("I_E = {}, I_V = {}", cx.interior[0], cx.interior[1]),
        Some(json!({"emerald": cx.interior[0], "violet": cx.interior[1]})),
    )
}

/// Tree produced for each hypertree, indexed `[hypertree side][cut color][hypertree]`.
pub type Outcomes = [[Vec<EdgeSet>; 2]; 2];

/// Runs all four processes on every hypertree. Invariants are checked online by the runs; the
/// order of current edges is compared with the tour of the resulting tree.
pub fn check_runs(cx: &Context) -> (Check, Option<Outcomes>) {
    let g = cx.g;
    let mut out: Outcomes = Default::default();
    let mut count = 0;
    for s in SIDES {
        for c in SIDES {
            let variant = ProcessVariant { hypertree_side: s, cut_side: c };
            for f in &cx.sets[idx(s)].list {
                let run = match bernardi::run(g, f, variant) {
                    Ok(r) => r,
                    Err(e) => {
                        let w = json!({"variant": variant.to_string(), "hypertree": f.literal(g)});
                        return (Check::new("bernardi.runs", false, e.to_string(), Some(w)), None);
                    }
                };
                if run.current_order() != tour_listing(g, run.tree, c) {
                    let w = json!({"variant": variant.to_string(), "hypertree": f.literal(g)});
                    return (Check::new("bernardi.runs", false, "walk differs from the tour", Some(w)), None);
                }
                out[idx(s)][idx(c)].push(run.tree);
                count += 1;
            }
        }
    }
    (Check::new("bernardi.runs", true, format!("{count} runs"), None), Some(out))
}

pub fn check_outcomes_are_jaeger(cx: &Context, out: &Outcomes) -> Check {
    let g = cx.g;
    for c in SIDES {
        let direct = &cx.jaeger[idx(c)];
        if recognized_jaeger_trees(g, c) != *direct {
            return Check::new("bernardi.outcomes-jaeger", false, format!("{c}-cut enumeration differs from recognition"), None);
        }
        let jset: BTreeSet<EdgeSet> = direct.iter().copied().collect();
        for s in SIDES {
            let oset: BTreeSet<EdgeSet> = out[idx(s)][idx(c)].iter().copied().collect();
            if oset != jset {
                let extra: Vec<Vec<&str>> = oset.symmetric_difference(&jset).map(|t| cx.names(*t)).collect();
                return Check::new(
                    "bernardi.outcomes-jaeger",
                    false,
                    format!("ht{}-cut{} outcomes differ from {c}-cut Jaeger trees", s.letter(), c.letter()),
                    Some(json!({"difference": extra})),
                );
            }
        }
    }
    let detail = format!("{} V-cut and {} E-cut trees", cx.jaeger[1].len(), cx.jaeger[0].len());
    Check::new("bernardi.outcomes-jaeger", true, detail, None)
}

pub fn check_bijection(cx: &Context, out: &Outcomes) -> Check {
    let g = cx.g;
    for s in SIDES {
        for c in SIDES {
            let trees = &out[idx(s)][idx(c)];
            let distinct: BTreeSet<EdgeSet> = trees.iter().copied().collect();
            let realizes = trees.iter().zip(&cx.sets[idx(s)].list).all(|(t, f)| degree_vector(g, *t, s) == *f);
            if distinct.len() != trees.len() || !realizes {
                return Check::new(
                    "bernardi.bijection",
                    false,
                    format!("ht{}-cut{} is not a bijection onto realizing trees", s.letter(), c.letter()),
                    None,
                );
            }
        }
        let images: BTreeSet<Vec<u32>> = out[0][idx(s)].iter().map(|t| degree_vector(g, *t, Color::Violet).values).collect();
        let targets: BTreeSet<Vec<u32>> = cx.sets[1].list.iter().map(|f| f.values.clone()).collect();
        if images != targets {
            return Check::new("bernardi.bijection", false, format!("induced map B_E -> B_V via {s}-cut trees is not onto"), None);
        }
    }
    Check::new("bernardi.bijection", true, "hypertrees, Jaeger trees and B_E -> B_V in bijection", None)
}

pub fn check_bernardi_interior(cx: &Context) -> Check {
    guarded("bernardi.interior", || {
        for s in SIDES {
            let (i, _) = bernardi::bernardi_polynomials_with(cx.g, &cx.sets[idx(s)], s)?;
            if i != cx.interior[idx(s)] {
                return Ok(Check::new(
                    "bernardi.interior",
                    false,
                    format!("embedding interior on {s} is {i}, interior is {}", cx.interior[idx(s)]),
                    Some(json!({"side": s.to_string(), "embedding": i, "interior": cx.interior[idx(s)]})),
                ));
            }
        }
        Ok(Check::new("bernardi.interior", true, format!("{} on both sides", cx.interior[0]), None))
    })
}

pub fn check_compositions(cx: &Context) -> Check {
    guarded("bernardi.composition", || {
        for f in &cx.sets[0].list {
            let r = check_composition(cx.g, f)?;
            if !r.ok() {
                return Ok(Check::new(
                    "bernardi.composition",
                    false,
                    "composition fails",
                    Some(json!({"hypertree": f.literal(cx.g), "report": r})),
                ));
            }
        }
        Ok(Check::new("bernardi.composition", true, format!("{} hypertrees", cx.sets[0].len()), None))
    })
}

pub fn check_reversal(cx: &Context) -> Check {
    let rev = cx.g.reversed_setup();
    let sorted = |mut v: Vec<EdgeSet>| {
        v.sort();
        v
    };
    let ok = SIDES
        .iter()
        .all(|c| sorted(cx.jaeger[idx(*c)].clone()) == sorted(jaeger_trees(&rev, c.other())));
    Check::new("jaeger.reversal", ok, "E-cut trees are the V-cut trees of the reversed setup", None)
}

pub fn check_characterization(cx: &Context) -> Check {
    let trees = &cx.jaeger[1];
    let mut n = 0;
    for (i, t) in trees.iter().enumerate() {
        for e in t.iter() {
            let ch = characterize_edge(cx.g, *t, e, &trees[..i], &cx.sets[0]);
            if !ch.agree() {
                return Check::new(
                    "jaeger.characterization",
                    false,
                    format!("disagreement on edge {}", cx.g.edge_name(e)),
                    Some(json!({"tree": cx.names(*t), "record": ch})),
                );
            }
            n += 1;
        }
    }
    Check::new("jaeger.characterization", true, format!("{n} tree edges"), None)
}

pub fn polytope_checks(cx: &Context, cfg: &Config) -> Vec<Check> {
    let g = cx.g;
    let names = ["polytope.dissection", "polytope.shelling", "polytope.compatibility", "polytope.ehrhart"];
    if g.has_parallel_edges() {
        return names.iter().map(|n| Check::skipped(n, "parallel edges")).collect();
    }
    let m = g.edge_count();
    let geometric = m <= cfg.geometric_max_edges;
    vec![
        guarded(names[0], || check_dissections(cx, geometric)),
        guarded(names[1], || {
            let r = polytope::check_shelling(g, &cx.jaeger[1], &cx.interior[0], geometric)?;
            let detail = format!("h = {}{}", r.h_vector, if geometric { ", facet coverage checked" } else { "" });
            let witness = json!({"violations": r.semi_active_violations, "h_vector": r.h_vector});
            Ok(Check::new(names[1], r.ok(), detail, Some(witness)))
        }),
        if m <= cfg.compatibility_max_edges {
            check_compatibility(cx)
        } else {
            Check::skipped(names[2], format!("more than {} edges", cfg.compatibility_max_edges))
        },
        if m <= cfg.ehrhart_max_edges {
            guarded(names[3], || {
                let d = polytope::dimension(g);
                let oracle = if m <= cfg.lattice_oracle_max_edges { 3 } else { 0 };
                let r = polytope::check_ehrhart(g, &cx.interior[0], d + 5, oracle)?;
                let detail = format!("values {:?}, fit {:?}", r.values, r.fitted);
                Ok(Check::new(names[3], r.ok(), detail, Some(json!(r))))
            })
        } else {
            Check::skipped(names[3], format!("more than {} edges", cfg.ehrhart_max_edges))
        },
    ]
}

fn check_dissections(cx: &Context, geometric: bool) -> Result<Check> {
    let g = cx.g;
    let mut pairs = 0;
    for (c, pairwise) in [(Color::Violet, geometric), (Color::Emerald, geometric)] {
        for s in SIDES {
            let r = polytope::check_dissection(g, &cx.jaeger[idx(c)], &cx.sets[idx(s)], pairwise && s == Color::Emerald)?;
            pairs += r.pairs_checked;
            if !r.ok() {
                return Ok(Check::new(
                    "polytope.dissection",
                    false,
                    format!("{c}-cut trees with markers of {s}"),
                    Some(json!(r)),
                ));
            }
        }
    }
    Ok(Check::new("polytope.dissection", true, format!("markers of both sides, {pairs} pairs separated"), None))
}

fn check_compatibility(cx: &Context) -> Check {
    let trees = &cx.jaeger[1];
    let mut witness = None;
    for j in 0..trees.len() {
        for i in 0..j {
            let comb = polytope::incompatible(cx.g, trees[i], trees[j]);
            let geo = !polytope::geometrically_compatible(cx.g, trees[i], trees[j]);
            if comb != geo {
                return Check::new(
                    "polytope.compatibility",
                    false,
                    "combinatorial and geometric compatibility differ",
                    Some(json!({"pair": [cx.names(trees[i]), cx.names(trees[j])]})),
                );
            }
            if comb && witness.is_none() {
                witness = Some((i, j));
            }
        }
    }
    let detail = match witness {
        None => "triangulation".to_string(),
        Some((i, j)) => format!(
            "not a triangulation: {:?} and {:?} are incompatible",
            cx.names(trees[i]),
            cx.names(trees[j])
        ),
    };
    Check::new("polytope.compatibility", true, detail, None)
}

pub fn ordinary_checks(cx: &Context, cfg: &Config) -> Vec<Check> {
    let names = ["ordinary.tutte", "ordinary.break-divisors", "ordinary.specialization", "ordinary.matching"];
    let Some(h) = cx.g.unsubdivide() else {
        return names.iter().map(|n| Check::skipped(n, "not a subdivided graph")).collect();
    };
    let t = tutte_check(&h);
    let tutte = Check::new(
        names[0],
        t.holds,
        format!("T(x,1) = {}, I = {}", t.tutte_x1, t.interior),
        Some(json!(t)),
    );
    let bd = break_divisors(&h);
    let trees = kirchhoff_count(&h);
    let genus = h.edge_count() as i64 - h.node_count() as i64 + 1;
    let bd_ok = num_bigint::BigInt::from(bd.len()) == trees
        && bd.iter().all(|z| z.iter().all(|v| *v >= 0) && z.iter().sum::<i64>() == genus);
    let breaks = Check::new(names[1], bd_ok, format!("{} break divisors, {} spanning trees", bd.len(), trees), None);
    let spec = guarded(names[2], || {
        let all = spanning_trees(&h);
        let n = all.len().min(cfg.specialization_max_trees);
        for t in &all[..n] {
            let r = graph_specialization_check(&h, *t)?;
            if !r.holds() {
                let w = json!({"tree": t.iter().map(|e| h.edge_name(e)).collect::<Vec<_>>(), "report": r});
                return Ok(Check::new(names[2], false, "induced orders differ from the tour order", Some(w)));
            }
        }
        Ok(Check::new(names[2], true, format!("{n} spanning trees"), None))
    });
    let bad = cx.jaeger[1].iter().find(|t| !matching_holds(cx.g, **t, &cx.sets[0], &cx.sets[1]));
    let matching = Check::new(
        names[3],
        bad.is_none(),
        format!("{} V-cut trees", cx.jaeger[1].len()),
        bad.map(|t| json!({"tree": cx.names(*t)})),
    );
    vec![tutte, breaks, spec, matching]
}

pub fn check_arborescence(cx: &Context) -> Check {
    let g = cx.g;
    if g.genus() != 0 || g.color(g.base_node()) != Color::Violet {
        return Check::skipped("planar.arborescence", "needs a plane embedding with a violet base node");
    }
    guarded("planar.arborescence", || {
        let r = check_arborescence_duality(g)?;
        let detail = format!("{} arborescences, {} V-cut trees", r.dual_trees.len(), r.jaeger.len());
        Ok(Check::new("planar.arborescence", r.holds(), detail, None))
    })
}

/// Compares the conjectured identities on both sides. For a subdivided graph, the identity
/// with the opposite cut on the edge side is a theorem, so a mismatch there is a failure.
/// Other mismatches are recomputed from brute-force hypertree sets before being flagged.
pub fn check_conjecture_identities(cx: &Context) -> Check {
    const NAME: &str = "conjectures";
    guarded(NAME, || {
        let g = cx.g;
        let graph_case = g.unsubdivide().is_some();
        let mut flagged = Vec::new();
        for s in SIDES {
            let r = check_conjectures_with(g, &cx.sets[idx(s)])?;
            if r.holds() {
                continue;
            }
            if graph_case && s == Color::Emerald && !r.interior_holds() {
                return Ok(Check::new(NAME, false, "interior identity fails on a graph", Some(conjecture_witness(g, &r))));
            }
            let oracle = HypertreeSet::from_list(s, oracle_hypertrees(g, s));
            let again = check_conjectures_with(g, &oracle)?;
            if again != r {
                return Ok(Check::new(
                    NAME,
                    false,
                    "brute-force recomputation disagrees",
                    Some(json!({"main": conjecture_witness(g, &r), "oracle": conjecture_witness(g, &again)})),
                ));
            }
            flagged.push(conjecture_witness(g, &r));
        }
        if flagged.is_empty() {
            return Ok(Check::new(NAME, true, "all conjectured identities hold", None));
        }
        Ok(Check {
            name: NAME,
            status: Status::Counterexample,
            detail: format!("{} side(s) disagree after oracle re-verification", flagged.len()),
            witness: Some(json!({"graph": write_graph(g), "sides": flagged})),
        })
    })
}

fn oracle_hypertrees(g: &RibbonBipartiteGraph, side: Color) -> Vec<crate::hypertree::Hypertree> {
    if g.edge_count() <= 22 {
        brute_force_hypertrees(g, side)
    } else {
        enumerate_hypertrees(g, side)
    }
}

fn conjecture_witness(g: &RibbonBipartiteGraph, r: &ConjectureReport) -> Value {
    json!({
        "graph_hash": graph_hash(g),
        "side": r.side.to_string(),
        "interior": r.interior,
        "exterior": r.exterior,
        "interior_cut_opposite": r.interior_cut_opposite,
        "exterior_cut_same": r.exterior_cut_same,
        "exterior_cut_opposite": r.exterior_cut_opposite,
        "holds": {
            "interior_cut_opposite": r.interior_holds(),
            "exterior_cut_same": r.exterior_same_holds(),
            "exterior_cut_opposite": r.exterior_opposite_holds(),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzConfig {
    pub first_seed: u64,
    pub count: u64,
    pub bounds: Bounds,
    /// Draw ordinary graphs and use their subdivisions; `bounds.max_violet` bounds the
    /// vertices and `bounds.max_edges` the edges of the ordinary graph.
    pub graphs_only: bool,
    pub timing: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub interior_cut_opposite: usize,
    pub exterior_cut_same: usize,
    pub exterior_cut_opposite: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FuzzReport {
    pub tool_version: &'static str,
    pub config: FuzzConfig,
    pub instances: u64,
    /// Instance sides on which each identity held.
    pub holds: Tally,
    pub status: Status,
    pub counterexamples: Vec<Value>,
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl FuzzReport {
    pub fn summary(&self) -> String {
        format!(
            "{}: {} instances from seed {}, identities held on {}/{}/{} of {} sides, {} counterexamples, {} failures, overall {}\n",
            self.tool_version,
            self.instances,
            self.config.first_seed,
            self.holds.interior_cut_opposite,
            self.holds.exterior_cut_same,
            self.holds.exterior_cut_opposite,
            2 * self.instances,
            self.counterexamples.len(),
            self.failures.len(),
            self.status.label()
        )
    }
}

struct FuzzOne {
    seed: u64,
    checks: Vec<Check>,
    reports: Vec<ConjectureReport>,
    graph: String,
}

pub fn fuzz_instance(seed: u64, cfg: &FuzzConfig) -> Result<RibbonBipartiteGraph> {
    if cfg.graphs_only {
        Ok(random::random_ordinary(seed, cfg.bounds.max_violet, cfg.bounds.max_edges)?.subdivision())
    } else {
        random::random_instance(seed, cfg.bounds)
    }
}

fn fuzz_one(seed: u64, cfg: &FuzzConfig) -> Result<FuzzOne> {
    let g = fuzz_instance(seed, cfg)?;
    let cx = Context::new(&g);
    let (runs, _) = check_runs(&cx);
    let checks = vec![runs, check_bernardi_interior(&cx), check_conjecture_identities(&cx)];
    let reports = SIDES.iter().map(|s| check_conjectures_with(&g, &cx.sets[idx(*s)])).collect::<Result<_>>()?;
    Ok(FuzzOne { seed, checks, reports, graph: write_graph(&g) })
}

/// Runs the conjecture checks, together with the process and interior checks, on seeded
/// random instances. Instances run in parallel; results are aggregated in seed order.
pub fn fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    let start = Instant::now();
    fuzz_instance(cfg.first_seed, cfg)?;
    let seeds: Vec<u64> = (cfg.first_seed..cfg.first_seed + cfg.count).collect();
    let results: Vec<Result<FuzzOne>> = seeds.par_iter().map(|s| fuzz_one(*s, cfg)).collect();
    let mut holds = Tally::default();
    let mut counterexamples = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        let one = r?;
        for rep in &one.reports {
            holds.interior_cut_opposite += rep.interior_holds() as usize;
            holds.exterior_cut_same += rep.exterior_same_holds() as usize;
            holds.exterior_cut_opposite += rep.exterior_opposite_holds() as usize;
        }
        for c in one.checks {
            let entry = || json!({"seed": one.seed, "graph": one.graph, "check": c});
            match c.status {
                Status::Fail => failures.push(entry()),
                Status::Counterexample => counterexamples.push(entry()),
                _ => {}
            }
        }
    }
    let status = if !failures.is_empty() {
        Status::Fail
    } else if !counterexamples.is_empty() {
        Status::Counterexample
    } else {
        Status::Pass
    };
    Ok(FuzzReport {
        tool_version: TOOL_VERSION,
        config: cfg.clone(),
        instances: cfg.count,
        holds,
        status,
        counterexamples,
        failures,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_and_exit_codes() {
        use Status::*;
        assert_eq!([Pass, Skipped, Counterexample, Fail].map(Status::exit_code), [0, 0, 3, 1]);
        assert_eq!(overall(&[Pass, Skipped]), Pass);
        assert_eq!(overall(&[Skipped]), Pass);
        assert_eq!(overall(&[Pass, Counterexample]), Counterexample);
        assert_eq!(overall(&[Counterexample, Fail, Pass]), Fail);
        assert_eq!(serde_json::to_value(Counterexample).unwrap(), "CONJECTURE-COUNTEREXAMPLE?");
    }
}
