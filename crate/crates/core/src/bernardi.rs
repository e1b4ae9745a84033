//! The four hypergraphical Bernardi processes and the embedding activities they induce.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph, UnionFind};
use crate::hypertree::{degree_vector, Activities, Hypertree, HypertreeOracle, HypertreeSet};
use crate::poly::IntegerPolynomial;
use crate::tour::tour;

/// Which side carries the hypertree and at which color edges may be cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProcessVariant {
    pub hypertree_side: Color,
    pub cut_side: Color,
}

impl ProcessVariant {
    pub const HTE_CUTV: ProcessVariant = ProcessVariant { hypertree_side: Color::Emerald, cut_side: Color::Violet };
    pub const HTE_CUTE: ProcessVariant = ProcessVariant { hypertree_side: Color::Emerald, cut_side: Color::Emerald };
    pub const HTV_CUTV: ProcessVariant = ProcessVariant { hypertree_side: Color::Violet, cut_side: Color::Violet };
    pub const HTV_CUTE: ProcessVariant = ProcessVariant { hypertree_side: Color::Violet, cut_side: Color::Emerald };
    pub const ALL: [ProcessVariant; 4] = [Self::HTE_CUTV, Self::HTE_CUTE, Self::HTV_CUTV, Self::HTV_CUTE];
}

impl fmt::Display for ProcessVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ht{}-cut{}", self.hypertree_side, self.cut_side)
    }
}

impl FromStr for ProcessVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Input(format!("unknown variant `{s}`; expected htE-cutV, htE-cutE, htV-cutV or htV-cutE")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Remove,
    Keep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub current: EdgeId,
    pub decision: Decision,
    /// The edge traversed from the non-cut side right after keeping `current`.
    pub forced: Option<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BernardiRun {
    pub variant: ProcessVariant,
    pub hypertree: Hypertree,
    pub steps: Vec<Step>,
    /// Traversals in order, each with the color of the node it started from.
    pub traversals: Vec<(EdgeId, Color)>,
    /// Step index at which each node was first reached by the walk.
    pub first_reached: Vec<Option<usize>>,
    pub tree: EdgeSet,
}

impl BernardiRun {
    /// Edges in the order in which they became current.
    pub fn current_order(&self) -> Vec<EdgeId> {
        self.steps.iter().map(|s| s.current).collect()
    }

    /// Order on one color class: by the earliest incident current edge.
    pub fn class_order(&self, g: &RibbonBipartiteGraph, side: Color) -> Vec<NodeId> {
        let mut first = vec![usize::MAX; g.node_count()];
        for (i, s) in self.steps.iter().enumerate() {
            for x in g.ends(s.current) {
                first[x.idx()] = first[x.idx()].min(i);
            }
        }
        let mut class = g.class(side);
        class.sort_by_key(|x| first[x.idx()]);
        class
    }
}

/// Runs a Bernardi process. Variants with the hypertree on violet nodes run on the transposed
/// graph. Theorem-level invariants are checked online; a violation is an [`Error::Invariant`].
pub fn run(g: &RibbonBipartiteGraph, f: &Hypertree, variant: ProcessVariant) -> Result<BernardiRun> {
    if f.side != variant.hypertree_side {
        return Err(Error::Input(format!("variant {variant} needs a hypertree on {} nodes", variant.hypertree_side)));
    }
    if variant.hypertree_side == Color::Violet {
        let t = g.transpose();
        let tf = Hypertree { side: Color::Emerald, values: f.values.clone() };
        let mut r = run_emerald(&t, &tf, variant.cut_side.other())?;
        r.variant = variant;
        r.hypertree = f.clone();
        for tr in r.traversals.iter_mut() {
            tr.1 = tr.1.other();
        }
        return Ok(r);
    }
    run_emerald(g, f, variant.cut_side)
}

fn run_emerald(g: &RibbonBipartiteGraph, f: &Hypertree, cut: Color) -> Result<BernardiRun> {
    let oracle = HypertreeOracle::new(g);
    let all = g.all_edges();
    if !oracle.feasible(f, all, EdgeSet::EMPTY) {
        return Err(Error::NotHypertree(f.literal(g)));
    }
    let other = cut.other();
    let m = g.edge_count();
    let mut live = all;
    let mut kept = EdgeSet::EMPTY;
    let mut examined = EdgeSet::EMPTY;
    let mut traversed = EdgeSet::EMPTY;
    let mut from_cut = EdgeSet::EMPTY;
    let mut from_other = EdgeSet::EMPTY;
    let mut uf = UnionFind::new(g.node_count());
    let mut steps = Vec::with_capacity(m);
    let mut traversals = Vec::new();
    let mut first_reached = vec![None; g.node_count()];

    let mut traverse = |e: EdgeId, dir: Color, traversed: &mut EdgeSet, traversals: &mut Vec<(EdgeId, Color)>| {
        traversals.push((e, dir));
        if !traversed.contains(e) {
            traversed.insert(e);
            let [a, b] = g.ends(e);
            if !uf.union(a.idx(), b.idx()) {
                return Err(Error::Invariant(format!("traversed edges contain a cycle closed by {}", g.edge_name(e))));
            }
        }
        Ok(())
    };

    let b0 = g.base_node();
    let base = g.base_edge();
    let mut cur = if g.color(b0) == cut {
        base
    } else {
        traverse(base, other, &mut traversed, &mut traversals)?;
        from_other.insert(base);
        let b1 = g.other_end(base, b0);
        g.succ(b1, base)
    };

    loop {
        if examined.contains(cur) {
            if !kept.contains(cur) {
                return Err(Error::Invariant(format!("removed edge {} became current again", g.edge_name(cur))));
            }
            break;
        }
        if steps.len() >= m {
            return Err(Error::Invariant("more steps than edges".into()));
        }
        let step = steps.len();
        for x in g.ends(cur) {
            first_reached[x.idx()].get_or_insert(step);
        }
        examined.insert(cur);
        let c = g.end_of_color(cur, cut);
        let o = g.end_of_color(cur, other);
        if oracle.feasible(f, live.without(cur), kept) {
            if traversed.contains(cur) {
                return Err(Error::Invariant(format!("traversed edge {} was removed", g.edge_name(cur))));
            }
            let next = g.succ_in(c, cur, live.without(cur));
            live.remove(cur);
            steps.push(Step { current: cur, decision: Decision::Remove, forced: None });
            cur = next.ok_or_else(|| Error::Invariant("walk reached an isolated node".into()))?;
            continue;
        }
        kept.insert(cur);
        traverse(cur, cut, &mut traversed, &mut traversals)?;
        from_cut.insert(cur);
        let ew = g.succ_in(o, cur, live).expect("cur is live at o");
        if from_other.contains(ew) {
            steps.push(Step { current: cur, decision: Decision::Keep, forced: None });
            break;
        }
        traverse(ew, other, &mut traversed, &mut traversals)?;
        from_other.insert(ew);
        steps.push(Step { current: cur, decision: Decision::Keep, forced: Some(ew) });
        let w = g.end_of_color(ew, cut);
        first_reached[w.idx()].get_or_insert(step);
        cur = g.succ_in(w, ew, live).expect("ew is live at w");
    }

    if steps.len() != m {
        return Err(Error::Invariant(format!("{} of {} edges became current", steps.len(), m)));
    }
    if live != traversed {
        return Err(Error::Invariant("final graph differs from the traversed subgraph".into()));
    }
    if !g.is_spanning_tree(live) || degree_vector(g, live, f.side) != *f {
        return Err(Error::Invariant("final graph is not a spanning tree realizing the hypertree".into()));
    }
    Ok(BernardiRun {
        variant: ProcessVariant { hypertree_side: Color::Emerald, cut_side: cut },
        hypertree: f.clone(),
        steps,
        traversals,
        first_reached,
        tree: live,
    })
}

/// Edges in the order of the tour of `t`, keeping the first occurrence of each non-edge and
/// the occurrence of each tree edge at its endpoint of color `cut`. For a tree produced by a
/// run cutting on `cut`, this is the order in which edges became current.
pub fn tour_listing(g: &RibbonBipartiteGraph, t: EdgeSet, cut: Color) -> Vec<EdgeId> {
    let mut seen = EdgeSet::EMPTY;
    let mut out = Vec::new();
    for s in tour(g, t) {
        let keep = if t.contains(s.edge) { g.color(s.node) == cut } else { !seen.contains(s.edge) };
        seen.insert(s.edge);
        if keep {
            out.push(s.edge);
        }
    }
    out
}

/// Embedding activities of `f` with respect to the class order induced by a run of `variant`.
pub fn embedding_activities(
    g: &RibbonBipartiteGraph,
    set: &HypertreeSet,
    f: &Hypertree,
    variant: ProcessVariant,
) -> Result<Activities> {
    let r = run(g, f, variant)?;
    Ok(set.activities(g, f, &r.class_order(g, f.side)))
}

/// The Bernardi-type interior and exterior polynomials on `side` for a process variant with
/// the hypertree on that side.
pub fn bernardi_polynomials(
    g: &RibbonBipartiteGraph,
    side: Color,
    cut: Color,
) -> Result<(IntegerPolynomial, IntegerPolynomial)> {
    bernardi_polynomials_with(g, &HypertreeSet::new(g, side), cut)
}

/// As [`bernardi_polynomials`], over a given hypertree set.
pub fn bernardi_polynomials_with(
    g: &RibbonBipartiteGraph,
    set: &HypertreeSet,
    cut: Color,
) -> Result<(IntegerPolynomial, IntegerPolynomial)> {
    let variant = ProcessVariant { hypertree_side: set.side, cut_side: cut };
    let mut ie = Vec::with_capacity(set.len());
    let mut ee = Vec::with_capacity(set.len());
    for f in &set.list {
        let a = embedding_activities(g, set, f, variant)?;
        ie.push(a.internal_inactive);
        ee.push(a.external_inactive);
    }
    Ok((IntegerPolynomial::from_exponents(ie), IntegerPolynomial::from_exponents(ee)))
}

/// Interior polynomial defined through embedding activities of the run that cuts on the
/// hypertree side.
pub fn bernardi_interior(g: &RibbonBipartiteGraph, side: Color) -> Result<IntegerPolynomial> {
    Ok(bernardi_polynomials(g, side, side)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub tree: EdgeSet,
    pub violet_roundtrip: bool,
    pub reversed_emerald: bool,
    pub reversed_violet: bool,
}

impl CompositionReport {
    pub fn ok(&self) -> bool {
        self.violet_roundtrip && self.reversed_emerald && self.reversed_violet
    }
}

/// For a hypertree `f` on `E`, with `T` the outcome of htE-cutV on `f`: htV-cutV on `f_V(T)`
/// gives `T`; htE-cutE on `f` in the reversed setup gives `T`; htV-cutE on `f_V(T)` in the
/// reversed setup gives `T`.
pub fn check_composition(g: &RibbonBipartiteGraph, f: &Hypertree) -> Result<CompositionReport> {
    let t = run(g, f, ProcessVariant::HTE_CUTV)?.tree;
    let fv = degree_vector(g, t, Color::Violet);
    let rev = g.reversed_setup();
    Ok(CompositionReport {
        tree: t,
        violet_roundtrip: run(g, &fv, ProcessVariant::HTV_CUTV)?.tree == t,
        reversed_emerald: run(&rev, f, ProcessVariant::HTE_CUTE)?.tree == t,
        reversed_violet: run(&rev, &fv, ProcessVariant::HTV_CUTE)?.tree == t,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub side: Color,
    pub interior: IntegerPolynomial,
    pub exterior: IntegerPolynomial,
    /// Interior polynomial from the run cutting on the opposite side.
    pub interior_cut_opposite: IntegerPolynomial,
    /// Exterior polynomials from the runs cutting on the same and on the opposite side.
    pub exterior_cut_same: IntegerPolynomial,
    pub exterior_cut_opposite: IntegerPolynomial,
}

impl ConjectureReport {
    pub fn interior_holds(&self) -> bool {
        self.interior_cut_opposite == self.interior
    }

    pub fn exterior_same_holds(&self) -> bool {
        self.exterior_cut_same == self.exterior
    }

    pub fn exterior_opposite_holds(&self) -> bool {
        self.exterior_cut_opposite == self.exterior
    }

    pub fn holds(&self) -> bool {
        self.interior_holds() && self.exterior_same_holds() && self.exterior_opposite_holds()
    }
}

/// Compares the embedding-activity polynomials that are only conjectured to agree with the
/// interior and exterior polynomials.
pub fn check_conjectures(g: &RibbonBipartiteGraph, side: Color) -> Result<ConjectureReport> {
    check_conjectures_with(g, &HypertreeSet::new(g, side))
}

/// As [`check_conjectures`], over a given hypertree set.
pub fn check_conjectures_with(g: &RibbonBipartiteGraph, set: &HypertreeSet) -> Result<ConjectureReport> {
    let side = set.side;
    let order = g.class(side);
    let acts: Vec<Activities> = set.list.iter().map(|f| set.activities(g, f, &order)).collect();
    let interior = IntegerPolynomial::from_exponents(acts.iter().map(|a| a.internal_inactive));
    let exterior = IntegerPolynomial::from_exponents(acts.iter().map(|a| a.external_inactive));
    let (_, ex_same) = bernardi_polynomials_with(g, set, side)?;
    let (in_opp, ex_opp) = bernardi_polynomials_with(g, set, side.other())?;
    Ok(ConjectureReport {
        side,
        interior,
        exterior,
        interior_cut_opposite: in_opp,
        exterior_cut_same: ex_same,
        exterior_cut_opposite: ex_opp,
    })
}
