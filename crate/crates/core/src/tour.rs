//! Tours of spanning trees and the spanning-tree toolkit.

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::graph::{EdgeId, NodeId, RibbonGraph, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TourStep {
    pub node: NodeId,
    pub edge: EdgeId,
    pub traversed: bool,
}

/// Walks the tour of `t` from `(b0, b0b1)`: tree edges are traversed, other edges skipped.
/// Stops just before the starting pair recurs. For a spanning tree this visits every
/// node-edge incidence once.
pub fn tour(g: &RibbonGraph, t: EdgeSet) -> Vec<TourStep> {
    let start = (g.base_node(), g.base_edge());
    let (mut x, mut e) = start;
    let mut out = Vec::with_capacity(2 * g.edge_count());
    loop {
        let traversed = t.contains(e);
        out.push(TourStep { node: x, edge: e, traversed });
        if traversed {
            x = g.other_end(e, x);
        }
        e = g.succ(x, e);
        if (x, e) == start || out.len() > 2 * g.edge_count() {
            break;
        }
    }
    out
}

/// Edges in order of their first occurrence along the tour.
pub fn tour_edge_order(g: &RibbonGraph, t: EdgeSet) -> Vec<EdgeId> {
    let mut seen = EdgeSet::EMPTY;
    let mut out = Vec::with_capacity(g.edge_count());
    for s in tour(g, t) {
        if !seen.contains(s.edge) {
            seen.insert(s.edge);
            out.push(s.edge);
        }
    }
    out
}

/// Inverse of an ordering: `rank[e]` is the position of `e`.
pub fn ranks(order: &[EdgeId], n: usize) -> Vec<usize> {
    let mut r = vec![usize::MAX; n];
    for (i, e) in order.iter().enumerate() {
        r[e.idx()] = i;
    }
    r
}

/// All spanning trees, in increasing order of their bitmask.
pub fn spanning_trees(g: &RibbonGraph) -> Vec<EdgeSet> {
    let mut out = Vec::new();
    let edges: Vec<EdgeId> = g.edges().collect();
    let uf = UnionFind::new(g.node_count());
    grow(g, &edges, 0, EdgeSet::EMPTY, g.all_edges(), uf, &mut out);
    out.sort();
    out
}

fn grow(
    g: &RibbonGraph,
    edges: &[EdgeId],
    i: usize,
    chosen: EdgeSet,
    avail: EdgeSet,
    uf: UnionFind,
    out: &mut Vec<EdgeSet>,
) {
    if chosen.len() + 1 == g.node_count() {
        out.push(chosen);
        return;
    }
    if i == edges.len() || !g.is_connected(avail) {
        return;
    }
    let e = edges[i];
    let [a, b] = g.ends(e);
    let mut uf2 = uf.clone();
    if uf2.union(a.idx(), b.idx()) {
        grow(g, edges, i + 1, chosen.with(e), avail, uf2, out);
    }
    grow(g, edges, i + 1, chosen, avail.without(e), uf, out);
}

/// Edges of `g` joining the two components of `t - e`, including `e`.
pub fn fundamental_cut(g: &RibbonGraph, t: EdgeSet, e: EdgeId) -> EdgeSet {
    let comp = g.components(t.without(e));
    g.edges()
        .filter(|f| {
            let [a, b] = g.ends(*f);
            comp[a.idx()] != comp[b.idx()]
        })
        .collect()
}

/// For `e` not in `t`: the edges of the unique cycle in `t + e`.
pub fn fundamental_cycle(g: &RibbonGraph, t: EdgeSet, e: EdgeId) -> EdgeSet {
    t.iter().filter(|f| fundamental_cut(g, t, *f).contains(e)).chain(std::iter::once(e)).collect()
}

/// Side of `t - e` containing node `x`: a boolean per node, true on `x`'s side.
pub fn side_of(g: &RibbonGraph, t: EdgeSet, e: EdgeId, x: NodeId) -> Vec<bool> {
    let comp = g.components(t.without(e));
    g.nodes().map(|y| comp[y.idx()] == comp[x.idx()]).collect()
}
