//! Ordinary ribbon graphs seen through their bipartite subdivision.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bernardi::{run, ProcessVariant};
use crate::edgeset::EdgeSet;
use crate::error::Result;
use crate::graph::{Color, EdgeId, RibbonGraph, UnionFind};
use crate::hypertree::{enumerate_hypertrees, interior_polynomial, Hypertree};
use crate::poly::IntegerPolynomial;
use crate::tour::tour_edge_order;

/// `T(x, 1)` of a multigraph by deletion and contraction. Loops contribute a factor `y = 1`.
pub fn tutte_x1(g: &RibbonGraph) -> IntegerPolynomial {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|e| {
            let [a, b] = g.ends(e);
            (a.idx(), b.idx())
        })
        .collect();
    IntegerPolynomial::new(tutte_rec(g.node_count(), &edges))
}

fn tutte_rec(n: usize, edges: &[(usize, usize)]) -> Vec<i128> {
    let Some((&(a, b), rest)) = edges.split_first() else {
        return vec![1];
    };
    if a == b {
        return tutte_rec(n, rest);
    }
    let contracted: Vec<(usize, usize)> = rest
        .iter()
        .map(|&(u, v)| (if u == b { a } else { u }, if v == b { a } else { v }))
        .collect();
    let mut uf = UnionFind::new(n);
    for (u, v) in rest {
        uf.union(*u, *v);
    }
    if !uf.same(a, b) {
        let mut p = vec![0];
        p.extend(tutte_rec(n, &contracted));
        return p;
    }
    let del = tutte_rec(n, rest);
    let con = tutte_rec(n, &contracted);
    let mut out = vec![0; del.len().max(con.len())];
    for (i, c) in del.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in con.iter().enumerate() {
        out[i] += c;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TutteCheck {
    pub tutte_x1: IntegerPolynomial,
    pub interior: IntegerPolynomial,
    pub holds: bool,
}

/// Checks `I(x) = x^(|V|-1) T(1/x, 1)` for the interior polynomial of the subdivision on the
/// side of the original edges.
pub fn tutte_check(g: &RibbonGraph) -> TutteCheck {
    let t = tutte_x1(g);
    let interior = interior_polynomial(&g.subdivision(), Color::Emerald, None);
    let n = g.node_count();
    let holds = t.degree().is_none_or(|d| d < n) && (0..n).all(|i| interior.coeff(n - 1 - i) == t.coeff(i));
    TutteCheck { tutte_x1: t, interior, holds }
}

/// The hypertree on the emerald side of the subdivision given by a spanning tree of `g`.
pub fn tree_hypertree(g: &RibbonGraph, t: EdgeSet) -> Hypertree {
    Hypertree { side: Color::Emerald, values: g.edges().map(|e| t.contains(e) as u32).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationCheck {
    pub tour_order: Vec<EdgeId>,
    pub cut_emerald_order: Vec<EdgeId>,
    pub cut_violet_order: Vec<EdgeId>,
}

impl SpecializationCheck {
    pub fn holds(&self) -> bool {
        self.cut_emerald_order == self.tour_order && self.cut_violet_order == self.tour_order
    }
}

/// Runs both processes with the hypertree on `E` on the subdivision, starting from the
/// characteristic vector of `t`, and reads off the induced orders on the edges of `g`.
pub fn graph_specialization_check(g: &RibbonGraph, t: EdgeSet) -> Result<SpecializationCheck> {
    let bip = g.subdivision();
    let f = tree_hypertree(g, t);
    let order = |variant| -> Result<Vec<EdgeId>> {
        let r = run(&bip, &f, variant)?;
        Ok(r.class_order(&bip, Color::Emerald).iter().map(|m| EdgeId(bip.class_index(*m) as u32)).collect())
    };
    Ok(SpecializationCheck {
        tour_order: tour_edge_order(g, t),
        cut_emerald_order: order(ProcessVariant::HTE_CUTE)?,
        cut_violet_order: order(ProcessVariant::HTE_CUTV)?,
    })
}

/// Break divisors: vectors `z` on the nodes of `g` with `d - 1 - z` a hypertree on the violet
/// side of the subdivision, where `d` is the degree vector.
pub fn break_divisors(g: &RibbonGraph) -> Vec<Vec<i64>> {
    let bip = g.subdivision();
    let set: BTreeSet<Vec<i64>> = enumerate_hypertrees(&bip, Color::Violet)
        .into_iter()
        .map(|f| g.nodes().zip(&f.values).map(|(x, v)| g.degree(x) as i64 - 1 - *v as i64).collect())
        .collect();
    set.into_iter().collect()
}
