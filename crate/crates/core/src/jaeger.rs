//! Jaeger trees, their orders, and semi-passive edges.
//!
//! A spanning tree is a V-cut (E-cut) Jaeger tree when every non-edge is first met in its
//! tour at its violet (emerald) endpoint.

use std::cmp::Ordering;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph, RibbonGraph, UnionFind};
use crate::hypertree::{degree_vector, inactivity_flags, HypertreeSet};
use crate::tour::{fundamental_cut, ranks, side_of, spanning_trees, tour};

pub fn is_jaeger(g: &RibbonBipartiteGraph, t: EdgeSet, cut: Color) -> bool {
    if !g.is_spanning_tree(t) {
        return false;
    }
    let mut seen = EdgeSet::EMPTY;
    for s in tour(g, t) {
        if !seen.contains(s.edge) {
            seen.insert(s.edge);
            if !t.contains(s.edge) && g.color(s.node) != cut {
                return false;
            }
        }
    }
    true
}

/// Compares two spanning trees by their tours: at the first pair where the tours disagree,
/// the tree that skips the edge is smaller.
pub fn compare_trees(g: &RibbonGraph, t1: EdgeSet, t2: EdgeSet) -> Ordering {
    match first_divergence(g, t1, t2) {
        None => Ordering::Equal,
        Some(e) if t2.contains(e) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// The edge at which the tours of two spanning trees first disagree.
pub fn first_divergence(g: &RibbonGraph, t1: EdgeSet, t2: EdgeSet) -> Option<EdgeId> {
    if t1 == t2 {
        return None;
    }
    let start = (g.base_node(), g.base_edge());
    let (mut x, mut e) = start;
    for _ in 0..=2 * g.edge_count() {
        if t1.contains(e) != t2.contains(e) {
            return Some(e);
        }
        if t1.contains(e) {
            x = g.other_end(e, x);
        }
        e = g.succ(x, e);
        if (x, e) == start {
            break;
        }
    }
    None
}

/// Jaeger trees found by filtering all spanning trees, sorted by [`compare_trees`].
pub fn recognized_jaeger_trees(g: &RibbonBipartiteGraph, cut: Color) -> Vec<EdgeSet> {
    let mut v: Vec<EdgeSet> = spanning_trees(g).into_iter().filter(|t| is_jaeger(g, *t, cut)).collect();
    v.sort_by(|a, b| compare_trees(g, *a, *b));
    v
}

/// Jaeger trees by walking the tour and deciding each edge at its first visit. At a node of
/// the cut color an undecided edge is first cut, then kept; elsewhere it must be kept. The
/// output is in increasing tree order.
pub fn jaeger_trees(g: &RibbonBipartiteGraph, cut: Color) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    let st = Walk {
        x: g.base_node(),
        e: g.base_edge(),
        inside: EdgeSet::EMPTY,
        outside: EdgeSet::EMPTY,
        uf: UnionFind::new(g.node_count()),
        steps: 0,
    };
    explore(g, cut, st, &mut out);
    out
}

#[derive(Clone)]
struct Walk {
    x: NodeId,
    e: EdgeId,
    inside: EdgeSet,
    outside: EdgeSet,
    uf: UnionFind,
    steps: usize,
}

fn explore(g: &RibbonBipartiteGraph, cut: Color, mut w: Walk, out: &mut Vec<EdgeSet>) {
    let start = (g.base_node(), g.base_edge());
    let all = g.all_edges();
    loop {
        if w.steps > 0 && (w.x, w.e) == start {
            if w.inside.union(w.outside) == all && g.is_spanning_tree(w.inside) {
                out.push(w.inside);
            }
            return;
        }
        if w.steps > 2 * g.edge_count() {
            return;
        }
        let e = w.e;
        let decided = w.inside.union(w.outside);
        if !decided.contains(e) {
            if g.color(w.x) == cut {
                let mut c = w.clone();
                c.outside.insert(e);
                if g.is_connected(all.difference(c.outside)) {
                    c.e = g.succ(c.x, e);
                    c.steps += 1;
                    explore(g, cut, c, out);
                }
            }
            let [a, b] = g.ends(e);
            if !w.uf.union(a.idx(), b.idx()) {
                return;
            }
            w.inside.insert(e);
        }
        if w.inside.contains(e) {
            w.x = g.other_end(e, w.x);
        }
        w.e = g.succ(w.x, e);
        w.steps += 1;
    }
}

/// Edges ordered by the position of `(end of color c, edge)` in the tour of `t` in `g`.
pub fn tour_order_at(g: &RibbonBipartiteGraph, t: EdgeSet, c: Color) -> Vec<EdgeId> {
    tour(g, t).into_iter().filter(|s| g.color(s.node) == c).map(|s| s.edge).collect()
}

/// Violet T-order: edges in the order they meet their violet endpoint in the tour.
pub fn violet_order(g: &RibbonBipartiteGraph, t: EdgeSet) -> Vec<EdgeId> {
    tour_order_at(g, t, Color::Violet)
}

/// Emerald T-order: edges in the order they meet their emerald endpoint in the tour of the
/// reversed setup.
pub fn emerald_order(g: &RibbonBipartiteGraph, t: EdgeSet) -> Vec<EdgeId> {
    tour_order_at(&g.reversed_setup(), t, Color::Emerald)
}

/// Order on a color class induced by an edge order: by the smallest incident edge.
pub fn induced_class_order(g: &RibbonBipartiteGraph, edge_order: &[EdgeId], side: Color) -> Vec<NodeId> {
    let r = ranks(edge_order, g.edge_count());
    let mut class = g.class(side);
    class.sort_by_key(|x| g.rotation(*x).iter().map(|e| r[e.idx()]).min());
    class
}

/// True when `e` in `t` stands opposite to the smallest edge of its fundamental cut: the two
/// have differently colored endpoints in each component of `t - e`.
pub fn is_semi_passive(g: &RibbonBipartiteGraph, t: EdgeSet, e: EdgeId, rank: &[usize]) -> bool {
    let cut = fundamental_cut(g, t, e);
    let min = cut.iter().min_by_key(|f| rank[f.idx()]).expect("cut contains e");
    if min == e {
        return false;
    }
    let a = g.ends(e)[0];
    let side = side_of(g, t, e, a);
    let end_in_a = |f: EdgeId| g.ends(f).into_iter().find(|x| side[x.idx()]).unwrap();
    g.color(end_in_a(e)) != g.color(end_in_a(min))
}

pub fn semi_passive(g: &RibbonBipartiteGraph, t: EdgeSet, order: &[EdgeId]) -> EdgeSet {
    let r = ranks(order, g.edge_count());
    t.iter().filter(|e| is_semi_passive(g, t, *e, &r)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCharacterization {
    pub edge: EdgeId,
    /// First divergence from some earlier tree.
    pub divergence: bool,
    /// Semi-passive for the emerald T-order.
    pub semi_passive: bool,
    /// Violet end in the base component and emerald end internally inactive.
    pub inactive_end: bool,
    /// Not the largest edge of its cut in the violet T-order.
    pub not_last: bool,
    /// Violet end in the base component and some cut edge with its emerald end there too.
    pub cut_shape: bool,
}

impl EdgeCharacterization {
    pub fn agree(&self) -> bool {
        let v = self.divergence;
        self.semi_passive == v && self.inactive_end == v && self.not_last == v && self.cut_shape == v
    }
}

/// Evaluates five equivalent descriptions of an edge `e` of a V-cut Jaeger tree `t`.
/// `earlier` lists the V-cut Jaeger trees preceding `t`; `hyper_e` is the hypertree set on `E`.
pub fn characterize_edge(
    g: &RibbonBipartiteGraph,
    t: EdgeSet,
    e: EdgeId,
    earlier: &[EdgeSet],
    hyper_e: &HypertreeSet,
) -> EdgeCharacterization {
    let divergence = earlier.iter().any(|s| first_divergence(g, *s, t) == Some(e));
    let em = emerald_order(g, t);
    let em_rank = ranks(&em, g.edge_count());
    let semi = is_semi_passive(g, t, e, &em_rank);
    let base_side = side_of(g, t, e, g.base_node());
    let v = g.violet_end(e);
    let v_in_base = base_side[v.idx()];
    let f = degree_vector(g, t, Color::Emerald);
    let class_order = induced_class_order(g, &em, Color::Emerald);
    let (internal, _) = inactivity_flags(g, &f, &class_order, &|h| hyper_e.contains(h));
    let pos = class_order.iter().position(|x| *x == g.emerald_end(e)).unwrap();
    let inactive_end = v_in_base && internal[pos];
    let vi_rank = ranks(&violet_order(g, t), g.edge_count());
    let cut = fundamental_cut(g, t, e);
    let last = cut.iter().max_by_key(|f| vi_rank[f.idx()]).unwrap();
    let cut_shape = v_in_base && cut.iter().any(|f| base_side[g.emerald_end(f).idx()]);
    EdgeCharacterization { edge: e, divergence, semi_passive: semi, inactive_end, not_last: last != e, cut_shape }
}

/// Check for subdivided ordinary graphs: the edges of `t` that are semi-passive in the violet
/// T-order match the internally inactive violet nodes of `f_V(t)` through their violet ends
/// and the internally inactive emerald nodes of `f_E(t)` through their emerald ends, with
/// both class orders induced by the violet T-order.
pub fn matching_holds(g: &RibbonBipartiteGraph, t: EdgeSet, hyper_e: &HypertreeSet, hyper_v: &HypertreeSet) -> bool {
    let order = violet_order(g, t);
    let sp = semi_passive(g, t, &order);
    [(Color::Violet, hyper_v), (Color::Emerald, hyper_e)].into_iter().all(|(c, set)| {
        let class = induced_class_order(g, &order, c);
        let f = degree_vector(g, t, c);
        let (internal, _) = inactivity_flags(g, &f, &class, &|h| set.contains(h));
        let inactive: Vec<NodeId> = class.iter().zip(&internal).filter(|(_, b)| **b).map(|(x, _)| *x).collect();
        let mut ends: Vec<NodeId> = sp.iter().map(|e| g.end_of_color(e, c)).collect();
        ends.sort();
        let mut inactive = inactive;
        inactive.sort();
        ends == inactive
    })
}
