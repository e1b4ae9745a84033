//! Hypertrees, transfers of valence, activities and the interior and exterior polynomials.
//!
//! A hypertree on side `S` is a vector `f` on the nodes of `S` for which some spanning tree
//! has degree `f(x) + 1` at every `x` in `S`.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph, UnionFind};
use crate::poly::IntegerPolynomial;
use crate::tour::spanning_trees;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Hypertree {
    pub side: Color,
    /// Values indexed by position within the color class.
    pub values: Vec<u32>,
}

impl Hypertree {
    pub fn get(&self, g: &RibbonBipartiteGraph, x: NodeId) -> u32 {
        debug_assert_eq!(g.color(x), self.side);
        self.values[g.class_index(x)]
    }

    /// Parses `e0=1,e1=0,...`. Every node of one color class must be listed exactly once.
    pub fn parse(g: &RibbonBipartiteGraph, literal: &str) -> Result<Hypertree> {
        let mut side = None;
        let mut vals = HashMap::new();
        for part in literal.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("expected `name=value`, got `{part}`")))?;
            let x = g
                .node_by_name(name.trim())
                .ok_or_else(|| Error::Input(format!("unknown node `{}`", name.trim())))?;
            let v: u32 = v.trim().parse().map_err(|_| Error::Input(format!("bad value in `{part}`")))?;
            match side {
                None => side = Some(g.color(x)),
                Some(c) if c != g.color(x) => {
                    return Err(Error::Input("hypertree mixes emerald and violet nodes".into()))
                }
                _ => {}
            }
            if vals.insert(x, v).is_some() {
                return Err(Error::Input(format!("node `{}` listed twice", name.trim())));
            }
        }
        let side = side.ok_or_else(|| Error::Input("empty hypertree literal".into()))?;
        let class = g.class(side);
        let values = class
            .iter()
            .map(|x| vals.get(x).copied().ok_or_else(|| Error::Input(format!("node `{}` missing", g.node_name(*x)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypertree { side, values })
    }

    pub fn literal(&self, g: &RibbonBipartiteGraph) -> String {
        g.class(self.side)
            .iter()
            .zip(&self.values)
            .map(|(x, v)| format!("{}={}", g.node_name(*x), v))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Moves one unit of valence from `from` to `to`, if `from` has any.
    pub fn transferred(&self, g: &RibbonBipartiteGraph, from: NodeId, to: NodeId) -> Option<Hypertree> {
        let (i, j) = (g.class_index(from), g.class_index(to));
        if self.values[i] == 0 {
            return None;
        }
        let mut h = self.clone();
        h.values[i] -= 1;
        h.values[j] += 1;
        Some(h)
    }

    pub fn display<'a>(&'a self, g: &'a RibbonBipartiteGraph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Hypertree, &'a RibbonBipartiteGraph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0.literal(self.1))
            }
        }
        D(self, g)
    }
}

/// Degree of `t` at every node of `side`, minus one.
pub fn degree_vector(g: &RibbonBipartiteGraph, t: EdgeSet, side: Color) -> Hypertree {
    let values = g.class(side).iter().map(|x| g.degree_in(*x, t) as u32 - 1).collect();
    Hypertree { side, values }
}

pub fn is_hypertree(g: &RibbonBipartiteGraph, f: &Hypertree) -> bool {
    realize(g, f, g.all_edges(), EdgeSet::EMPTY).is_some()
}

/// Searches for a spanning tree of `(V, live)` that contains `pinned` and realizes `f`.
///
/// Backtracks over the nodes of `f`'s side, choosing `f(x) + 1` incident live edges at each.
/// Every edge has exactly one end on that side, so acyclic choices of total size
/// `|V| - 1` are spanning trees.
pub fn realize(g: &RibbonBipartiteGraph, f: &Hypertree, live: EdgeSet, pinned: EdgeSet) -> Option<EdgeSet> {
    let class = g.class(f.side);
    if f.values.len() != class.len() {
        return None;
    }
    let total: usize = f.values.iter().map(|v| *v as usize + 1).sum();
    if total + 1 != g.node_count() || !pinned.is_subset(live) || !g.is_connected(live) {
        return None;
    }
    let mut plan = Vec::with_capacity(class.len());
    for (x, v) in class.iter().zip(&f.values) {
        let need = *v as usize + 1;
        let inc: Vec<EdgeId> = g.rotation(*x).iter().copied().filter(|e| live.contains(*e)).collect();
        let pin: EdgeSet = inc.iter().copied().filter(|e| pinned.contains(*e)).collect();
        if need > inc.len() || pin.len() > need {
            return None;
        }
        let free: Vec<EdgeId> = inc.into_iter().filter(|e| !pinned.contains(*e)).collect();
        let k = need - pin.len();
        plan.push(Slot { pin, free, k, all: EdgeSet::EMPTY });
    }
    if class.len() <= 12 && !neighborhood_condition(g, &class, &f.values, live) {
        return None;
    }
    plan.sort_by_key(|s| binomial(s.free.len(), s.k));
    for s in plan.iter_mut() {
        s.all = s.free.iter().copied().collect::<EdgeSet>().union(s.pin);
    }
    let mut rest = vec![EdgeSet::EMPTY; plan.len() + 1];
    for i in (0..plan.len()).rev() {
        rest[i] = rest[i + 1].union(plan[i].all);
    }
    let uf = UnionFind::new(g.node_count());
    search(g, &plan, &rest, 0, EdgeSet::EMPTY, uf)
}

struct Slot {
    pin: EdgeSet,
    free: Vec<EdgeId>,
    k: usize,
    all: EdgeSet,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn neighborhood_condition(g: &RibbonBipartiteGraph, class: &[NodeId], f: &[u32], live: EdgeSet) -> bool {
    let nbrs: Vec<u128> = class
        .iter()
        .map(|x| {
            g.rotation(*x)
                .iter()
                .filter(|e| live.contains(**e))
                .fold(0u128, |m, e| m | 1u128 << g.class_index(g.other_end(*e, *x)))
        })
        .collect();
    for mask in 1u32..(1 << class.len()) {
        let mut sum = 0u32;
        let mut nb = 0u128;
        for i in 0..class.len() {
            if mask >> i & 1 == 1 {
                sum += f[i];
                nb |= nbrs[i];
            }
        }
        if sum + 1 > nb.count_ones() && nb != 0 {
            return false;
        }
    }
    true
}

fn search(
    g: &RibbonBipartiteGraph,
    plan: &[Slot],
    rest: &[EdgeSet],
    i: usize,
    chosen: EdgeSet,
    uf: UnionFind,
) -> Option<EdgeSet> {
    if i == plan.len() {
        return Some(chosen);
    }
    let slot = &plan[i];
    let mut found = None;
    for_each_combination(slot.free.len(), slot.k, &mut |idx| {
        let mut pick = slot.pin;
        for j in idx {
            pick.insert(slot.free[*j]);
        }
        let mut uf2 = uf.clone();
        for e in pick.iter() {
            let [a, b] = g.ends(e);
            if !uf2.union(a.idx(), b.idx()) {
                return false;
            }
        }
        let mut probe = uf2.clone();
        let mut comps = (0..g.node_count()).filter(|x| probe.find(*x) == *x).count();
        for e in rest[i + 1].iter() {
            let [a, b] = g.ends(e);
            if probe.union(a.idx(), b.idx()) {
                comps -= 1;
            }
        }
        if comps != 1 {
            return false;
        }
        if let Some(t) = search(g, plan, rest, i + 1, chosen.union(pick), uf2) {
            found = Some(t);
            return true;
        }
        false
    });
    found
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it returns true.
fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Hypertree feasibility with a cache keyed on the live edge set and the vector.
pub struct HypertreeOracle<'a> {
    g: &'a RibbonBipartiteGraph,
    cache: RefCell<HashMap<(EdgeSet, EdgeSet, Hypertree), bool>>,
}

impl<'a> HypertreeOracle<'a> {
    pub fn new(g: &'a RibbonBipartiteGraph) -> Self {
        HypertreeOracle { g, cache: RefCell::new(HashMap::new()) }
    }

    pub fn feasible(&self, f: &Hypertree, live: EdgeSet, pinned: EdgeSet) -> bool {
        let key = (live, pinned, f.clone());
        if let Some(b) = self.cache.borrow().get(&key) {
            return *b;
        }
        let b = realize(self.g, f, live, pinned).is_some();
        self.cache.borrow_mut().insert(key, b);
        b
    }
}

/// All hypertrees on `side`, sorted lexicographically, from a sweep over spanning trees.
pub fn enumerate_hypertrees(g: &RibbonBipartiteGraph, side: Color) -> Vec<Hypertree> {
    let set: BTreeSet<Hypertree> = spanning_trees(g).into_iter().map(|t| degree_vector(g, t, side)).collect();
    set.into_iter().collect()
}

/// All hypertrees on `side` by testing every candidate vector with the backtracking search.
pub fn enumerate_hypertrees_by_search(g: &RibbonBipartiteGraph, side: Color) -> Vec<Hypertree> {
    let class = g.class(side);
    let caps: Vec<u32> = class.iter().map(|x| g.degree(*x) as u32 - 1).collect();
    let target = g.class_size(side.other()) as u32 - 1;
    let mut out = Vec::new();
    let mut cur = vec![0u32; class.len()];
    fn rec(g: &RibbonBipartiteGraph, side: Color, caps: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Hypertree>) {
        if i == caps.len() {
            if left == 0 {
                let h = Hypertree { side, values: cur.clone() };
                if is_hypertree(g, &h) {
                    out.push(h);
                }
            }
            return;
        }
        for v in 0..=caps[i].min(left) {
            cur[i] = v;
            rec(g, side, caps, i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(g, side, &caps, 0, target, &mut cur, &mut out);
    out.sort();
    out
}

pub fn can_transfer(g: &RibbonBipartiteGraph, f: &Hypertree, from: NodeId, to: NodeId) -> bool {
    f.transferred(g, from, to).is_some_and(|h| is_hypertree(g, &h))
}

/// Internal and external inactivity of every node of `f`'s side, for the order `order`
/// (smallest first) and a membership test for the hypertree set.
pub fn inactivity_flags(
    g: &RibbonBipartiteGraph,
    f: &Hypertree,
    order: &[NodeId],
    member: &dyn Fn(&Hypertree) -> bool,
) -> (Vec<bool>, Vec<bool>) {
    let mut internal = vec![false; order.len()];
    let mut external = vec![false; order.len()];
    for (i, x) in order.iter().enumerate() {
        for y in &order[..i] {
            if !internal[i] && f.transferred(g, *x, *y).is_some_and(|h| member(&h)) {
                internal[i] = true;
            }
            if !external[i] && f.transferred(g, *y, *x).is_some_and(|h| member(&h)) {
                external[i] = true;
            }
        }
    }
    (internal, external)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Activities {
    pub internal_inactive: usize,
    pub external_inactive: usize,
}

pub fn activities(g: &RibbonBipartiteGraph, f: &Hypertree, order: &[NodeId]) -> Activities {
    let (i, e) = inactivity_flags(g, f, order, &|h| is_hypertree(g, h));
    Activities {
        internal_inactive: i.iter().filter(|b| **b).count(),
        external_inactive: e.iter().filter(|b| **b).count(),
    }
}

/// The hypertree set of one side with fast membership.
pub struct HypertreeSet {
    pub side: Color,
    pub list: Vec<Hypertree>,
    set: HashSet<Hypertree>,
}

impl HypertreeSet {
    pub fn new(g: &RibbonBipartiteGraph, side: Color) -> Self {
        let list = enumerate_hypertrees(g, side);
        let set = list.iter().cloned().collect();
        HypertreeSet { side, list, set }
    }

    pub fn from_list(side: Color, list: Vec<Hypertree>) -> Self {
        let set = list.iter().cloned().collect();
        HypertreeSet { side, list, set }
    }

    pub fn contains(&self, f: &Hypertree) -> bool {
        self.set.contains(f)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn activities(&self, g: &RibbonBipartiteGraph, f: &Hypertree, order: &[NodeId]) -> Activities {
        let (i, e) = inactivity_flags(g, f, order, &|h| self.contains(h));
        Activities {
            internal_inactive: i.iter().filter(|b| **b).count(),
            external_inactive: e.iter().filter(|b| **b).count(),
        }
    }
}

/// Interior polynomial of the hypergraph whose hyperedges are the nodes of `side`.
pub fn interior_polynomial(g: &RibbonBipartiteGraph, side: Color, order: Option<&[NodeId]>) -> IntegerPolynomial {
    let set = HypertreeSet::new(g, side);
    let default = g.class(side);
    let order = order.unwrap_or(&default);
    IntegerPolynomial::from_exponents(set.list.iter().map(|f| set.activities(g, f, order).internal_inactive))
}

pub fn exterior_polynomial(g: &RibbonBipartiteGraph, side: Color, order: Option<&[NodeId]>) -> IntegerPolynomial {
    let set = HypertreeSet::new(g, side);
    let default = g.class(side);
    let order = order.unwrap_or(&default);
    IntegerPolynomial::from_exponents(set.list.iter().map(|f| set.activities(g, f, order).external_inactive))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, &mut |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut n = 0;
        for_each_combination(3, 0, &mut |_| {
            n += 1;
            false
        });
        assert_eq!(n, 1);
        for_each_combination(5, 5, &mut |_| {
            n += 1;
            false
        });
        assert_eq!(n, 2);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(7, 0), 1);
    }
}
