//! The root polytope `Q_G = conv{e + v : ev an edge}` in `R^(E ∪ V)` and exact checks of its
//! dissection and shelling by Jaeger-tree simplices.

pub mod rational;

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph};
use crate::hypertree::{Hypertree, HypertreeSet};
use crate::jaeger::{emerald_order, first_divergence, semi_passive};
use crate::poly::IntegerPolynomial;
use crate::tour::fundamental_cut;

pub use rational::{frac, maximize, q, solve_unique, LpOutcome, Q};

pub type Point = Vec<Q>;

fn require_simple(g: &RibbonBipartiteGraph) -> Result<()> {
    if g.has_parallel_edges() {
        return Err(Error::Unsupported("root polytope checks need a graph without parallel edges".into()));
    }
    Ok(())
}

/// Dimension of the root polytope of a connected bipartite graph.
pub fn dimension(g: &RibbonBipartiteGraph) -> usize {
    g.node_count() - 2
}

pub fn vertex(g: &RibbonBipartiteGraph, e: EdgeId) -> Point {
    let mut p = vec![Q::zero(); g.node_count()];
    for x in g.ends(e) {
        p[x.idx()] = Q::one();
    }
    p
}

/// Marker of a hypertree `f` on `E`: `f/|V| + 1_E/(|E||V|) + 1_V/|V|`. Markers of hypertrees
/// on `V` use the transposed formula.
pub fn marker(g: &RibbonBipartiteGraph, f: &Hypertree) -> Point {
    let side = f.side;
    let ns = g.class_size(side) as i64;
    let no = g.class_size(side.other()) as i64;
    g.nodes()
        .map(|x| {
            if g.color(x) == side {
                frac(f.get(g, x) as i64, no) + frac(1, ns * no)
            } else {
                frac(1, no)
            }
        })
        .collect()
}

/// Barycentric coordinates of `p` with respect to the vertices of the edges in `s`, if `p`
/// lies in their affine hull. `s` must be a forest.
pub fn barycentric(g: &RibbonBipartiteGraph, s: EdgeSet, p: &Point) -> Option<Vec<(EdgeId, Q)>> {
    let edges = s.to_vec();
    let mut a: Vec<Vec<Q>> = g
        .nodes()
        .map(|x| edges.iter().map(|e| if g.ends(*e).contains(&x) { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut b: Vec<Q> = p.clone();
    a.push(vec![Q::one(); edges.len()]);
    b.push(Q::one());
    let lam = solve_unique(&a, &b)?;
    Some(edges.into_iter().zip(lam).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Containment {
    Outside,
    Boundary,
    Interior,
}

/// Position of `p` relative to the simplex `Q_s`.
pub fn simplex_contains(g: &RibbonBipartiteGraph, s: EdgeSet, p: &Point) -> Containment {
    match barycentric(g, s, p) {
        None => Containment::Outside,
        Some(l) if l.iter().any(|(_, v)| v.is_negative()) => Containment::Outside,
        Some(l) if l.iter().any(|(_, v)| v.is_zero()) => Containment::Boundary,
        Some(_) => Containment::Interior,
    }
}

/// Containment in `Q_t` for a spanning tree `t` by peeling leaves: the coordinate of a leaf
/// node is the weight of its unique tree edge.
pub fn leaf_peeling_contains(g: &RibbonBipartiteGraph, t: EdgeSet, p: &Point) -> Containment {
    let mut rem = p.clone();
    let mut left = t;
    let mut weights = Vec::new();
    while !left.is_empty() {
        let leaf = g.nodes().find(|x| g.degree_in(*x, left) == 1);
        let Some(x) = leaf else {
            return Containment::Outside;
        };
        let e = g.rotation(x).iter().copied().find(|e| left.contains(*e)).unwrap();
        let w = rem[x.idx()].clone();
        let y = g.other_end(e, x);
        rem[y.idx()] -= &w;
        rem[x.idx()] = Q::zero();
        weights.push(w);
        left.remove(e);
    }
    if rem.iter().any(|v| !v.is_zero()) || weights.iter().any(|w| w.is_negative()) {
        return Containment::Outside;
    }
    if weights.iter().any(|w| w.is_zero()) {
        Containment::Boundary
    } else {
        Containment::Interior
    }
}

/// A `±1` functional on `R^(E ∪ V)` from the cut of `t - e`: `-1` on emerald nodes on the
/// side of `e`'s violet end and on violet nodes of the other side, `+1` elsewhere. It is zero
/// on the vertices of `t - e`, `2` on `e`, and `±2` on other edges crossing the cut.
pub fn cut_functional(g: &RibbonBipartiteGraph, t: EdgeSet, e: EdgeId) -> Vec<i64> {
    let comp = g.components(t.without(e));
    let v = g.violet_end(e);
    g.nodes()
        .map(|x| {
            let near = comp[x.idx()] == comp[v.idx()];
            match (g.color(x), near) {
                (Color::Emerald, true) | (Color::Violet, false) => -1,
                _ => 1,
            }
        })
        .collect()
}

pub fn functional_on_edge(g: &RibbonBipartiteGraph, k: &[i64], e: EdgeId) -> i64 {
    g.ends(e).iter().map(|x| k[x.idx()]).sum()
}

/// Separates `Q_t1` and `Q_t2` (with `t1` before `t2` in tree order) by the cut functional of
/// their first divergence. True when the certificate is valid.
pub fn separation_certificate(g: &RibbonBipartiteGraph, t1: EdgeSet, t2: EdgeSet) -> bool {
    let Some(e) = first_divergence(g, t1, t2) else {
        return false;
    };
    if !t2.contains(e) {
        return false;
    }
    let k = cut_functional(g, t2, e);
    t1.iter().all(|f| functional_on_edge(g, &k, f) <= 0)
}

/// Largest `t` such that some point has all barycentric weights at least `t` in `Q_a` and lies
/// in `Q_b` (with weights at least `t` too when `b_relint`). `None` if the sets are disjoint.
fn overlap_depth(g: &RibbonBipartiteGraph, a: EdgeSet, b: EdgeSet, b_relint: bool) -> Option<Q> {
    let ea = a.to_vec();
    let eb = b.to_vec();
    // Variables: t, alpha_i, beta_j, slack_i for alpha_i - t, slack_j for beta_j - t.
    let na = ea.len();
    let nb = eb.len();
    let slack_b = if b_relint { nb } else { 0 };
    let nvar = 1 + na + nb + na + slack_b;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for x in g.nodes() {
        let mut r = vec![Q::zero(); nvar];
        for (i, e) in ea.iter().enumerate() {
            if g.ends(*e).contains(&x) {
                r[1 + i] = Q::one();
            }
        }
        for (j, e) in eb.iter().enumerate() {
            if g.ends(*e).contains(&x) {
                r[1 + na + j] = -Q::one();
            }
        }
        rows.push(r);
        rhs.push(Q::zero());
    }
    let mut sa = vec![Q::zero(); nvar];
    for i in 0..na {
        sa[1 + i] = Q::one();
    }
    rows.push(sa);
    rhs.push(Q::one());
    let mut sb = vec![Q::zero(); nvar];
    for j in 0..nb {
        sb[1 + na + j] = Q::one();
    }
    rows.push(sb);
    rhs.push(Q::one());
    for i in 0..na {
        let mut r = vec![Q::zero(); nvar];
        r[1 + i] = Q::one();
        r[0] = -Q::one();
        r[1 + na + nb + i] = -Q::one();
        rows.push(r);
        rhs.push(Q::zero());
    }
    for j in 0..slack_b {
        let mut r = vec![Q::zero(); nvar];
        r[1 + na + j] = Q::one();
        r[0] = -Q::one();
        r[1 + na + nb + na + j] = -Q::one();
        rows.push(r);
        rhs.push(Q::zero());
    }
    let mut c = vec![Q::zero(); nvar];
    c[0] = Q::one();
    match maximize(&c, &rows, &rhs) {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("weights are bounded"),
    }
}

/// True when the relative interiors of `Q_a` and `Q_b` meet.
pub fn relints_meet(g: &RibbonBipartiteGraph, a: EdgeSet, b: EdgeSet) -> bool {
    overlap_depth(g, a, b, true).is_some_and(|t| t.is_positive())
}

/// True when the relative interior of `Q_a` meets `Q_b`.
pub fn relint_meets(g: &RibbonBipartiteGraph, a: EdgeSet, b: EdgeSet) -> bool {
    overlap_depth(g, a, b, false).is_some_and(|t| t.is_positive())
}

/// Two trees are incompatible when orienting `t1` from emerald to violet and `t2` from
/// violet to emerald yields a directed simple cycle of length at least four.
pub fn incompatible(g: &RibbonBipartiteGraph, t1: EdgeSet, t2: EdgeSet) -> bool {
    let n = g.node_count();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in t1.iter() {
        out[g.emerald_end(e).idx()].push(g.violet_end(e).idx());
    }
    for e in t2.iter() {
        out[g.violet_end(e).idx()].push(g.emerald_end(e).idx());
    }
    fn dfs(out: &[Vec<usize>], s: usize, x: usize, len: usize, on: &mut Vec<bool>) -> bool {
        for &y in &out[x] {
            if y == s && len + 1 >= 4 {
                return true;
            }
            if y > s && !on[y] {
                on[y] = true;
                if dfs(out, s, y, len + 1, on) {
                    return true;
                }
                on[y] = false;
            }
        }
        false
    }
    (0..n).any(|s| {
        let mut on = vec![false; n];
        on[s] = true;
        dfs(&out, s, s, 0, &mut on)
    })
}

/// Geometric compatibility: `Q_t1 ∩ Q_t2 = Q_(t1 ∩ t2)`, decided by maximizing the weight on
/// `t1 \ t2` over the intersection.
pub fn geometrically_compatible(g: &RibbonBipartiteGraph, t1: EdgeSet, t2: EdgeSet) -> bool {
    let e1 = t1.to_vec();
    let e2 = t2.to_vec();
    let (n1, n2) = (e1.len(), e2.len());
    let nvar = n1 + n2;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in g.nodes() {
        let mut r = vec![Q::zero(); nvar];
        for (i, e) in e1.iter().enumerate() {
            if g.ends(*e).contains(&x) {
                r[i] = Q::one();
            }
        }
        for (j, e) in e2.iter().enumerate() {
            if g.ends(*e).contains(&x) {
                r[n1 + j] = -Q::one();
            }
        }
        rows.push(r);
        rhs.push(Q::zero());
    }
    let s1: Vec<Q> = (0..nvar).map(|i| if i < n1 { Q::one() } else { Q::zero() }).collect();
    let s2: Vec<Q> = (0..nvar).map(|i| if i < n1 { Q::zero() } else { Q::one() }).collect();
    rows.push(s1);
    rows.push(s2);
    rhs.push(Q::one());
    rhs.push(Q::one());
    let c: Vec<Q> = (0..nvar).map(|i| if i < n1 && !t2.contains(e1[i]) { Q::one() } else { Q::zero() }).collect();
    match maximize(&c, &rows, &rhs) {
        LpOutcome::Infeasible => true,
        LpOutcome::Optimal { value, .. } => value.is_zero(),
        LpOutcome::Unbounded => unreachable!(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DissectionReport {
    pub trees: usize,
    pub markers: usize,
    /// Hypertrees whose marker is not in exactly one simplex, with the number of simplices.
    pub marker_failures: Vec<(String, usize)>,
    /// Markers strictly inside a simplex of a tree realizing the hypertree.
    pub markers_interior_and_realizing: bool,
    pub leaf_peeling_agrees: bool,
    pub pairs_checked: usize,
    pub pairs_certified: usize,
    pub pairs_intersecting: Vec<(usize, usize)>,
    pub equal_volumes: bool,
}

impl DissectionReport {
    pub fn ok(&self) -> bool {
        self.marker_failures.is_empty()
            && self.markers_interior_and_realizing
            && self.leaf_peeling_agrees
            && self.pairs_intersecting.is_empty()
            && self.equal_volumes
    }
}

/// Checks that the simplices of the given trees (in tree order) dissect `Q_G`: each
/// hypertree's marker lies in exactly one simplex, and, when `pairwise` is set, interiors are
/// pairwise disjoint (by cut certificates, with an exact LP as fallback).
pub fn check_dissection(
    g: &RibbonBipartiteGraph,
    trees: &[EdgeSet],
    hyper: &HypertreeSet,
    pairwise: bool,
) -> Result<DissectionReport> {
    require_simple(g)?;
    let mut marker_failures = Vec::new();
    let mut interior_ok = true;
    let mut peel_ok = true;
    for f in &hyper.list {
        let p = marker(g, f);
        let mut hits = Vec::new();
        for t in trees {
            let c = simplex_contains(g, *t, &p);
            if leaf_peeling_contains(g, *t, &p) != c {
                peel_ok = false;
            }
            if c != Containment::Outside {
                hits.push((*t, c));
            }
        }
        if hits.len() != 1 {
            marker_failures.push((f.literal(g), hits.len()));
        } else {
            let (t, c) = hits[0];
            if c != Containment::Interior || crate::hypertree::degree_vector(g, t, f.side) != *f {
                interior_ok = false;
            }
        }
    }
    let mut pairs_checked = 0;
    let mut pairs_certified = 0;
    let mut pairs_intersecting = Vec::new();
    if pairwise {
        for j in 0..trees.len() {
            for i in 0..j {
                pairs_checked += 1;
                if separation_certificate(g, trees[i], trees[j]) {
                    pairs_certified += 1;
                } else if relints_meet(g, trees[i], trees[j]) {
                    pairs_intersecting.push((i, j));
                }
            }
        }
    }
    let vols: HashSet<num_bigint::BigInt> = trees.iter().map(|t| gram_determinant(g, *t)).collect();
    Ok(DissectionReport {
        trees: trees.len(),
        markers: hyper.len(),
        marker_failures,
        markers_interior_and_realizing: interior_ok,
        leaf_peeling_agrees: peel_ok,
        pairs_checked,
        pairs_certified,
        pairs_intersecting,
        equal_volumes: vols.len() <= 1,
    })
}

/// Gram determinant of the edge vectors of `Q_t` relative to its first vertex; equal values
/// mean equal volumes.
pub fn gram_determinant(g: &RibbonBipartiteGraph, t: EdgeSet) -> num_bigint::BigInt {
    let vs: Vec<Vec<i64>> = t
        .iter()
        .map(|e| {
            let mut v = vec![0i64; g.node_count()];
            for x in g.ends(e) {
                v[x.idx()] = 1;
            }
            v
        })
        .collect();
    let diffs: Vec<Vec<i64>> = vs[1..].iter().map(|v| v.iter().zip(&vs[0]).map(|(a, b)| a - b).collect()).collect();
    let gram = diffs
        .iter()
        .map(|a| diffs.iter().map(|b| num_bigint::BigInt::from(a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>())).collect())
        .collect();
    crate::oracle::bareiss_det(gram)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShellingReport {
    /// For each tree in order, the edges that are the first divergence from an earlier tree.
    pub divergence_sets: Vec<EdgeSet>,
    /// For each tree, the semi-passive edges in its emerald T-order.
    pub semi_passive_sets: Vec<EdgeSet>,
    /// For each tree, the facets found covered by earlier simplices, if geometry was checked.
    pub covered_sets: Option<Vec<EdgeSet>>,
    /// Facets that should be disjoint from earlier simplices but are not.
    pub semi_active_violations: Vec<(usize, EdgeId)>,
    pub h_vector: IntegerPolynomial,
    pub interior: IntegerPolynomial,
}

impl ShellingReport {
    pub fn ok(&self) -> bool {
        self.divergence_sets == self.semi_passive_sets
            && self.covered_sets.as_ref().is_none_or(|c| *c == self.semi_passive_sets)
            && self.semi_active_violations.is_empty()
            && self.h_vector == self.interior
    }
}

/// Checks that V-cut Jaeger trees in tree order shell the root polytope: the facets of each
/// simplex that lie in earlier simplices are those of its semi-passive edges, and the
/// h-vector equals the interior polynomial. With `geometric`, facet coverage is decided by
/// exact LPs on the polytope itself.
pub fn check_shelling(
    g: &RibbonBipartiteGraph,
    trees: &[EdgeSet],
    interior: &IntegerPolynomial,
    geometric: bool,
) -> Result<ShellingReport> {
    if geometric {
        require_simple(g)?;
    }
    let mut divergence_sets = Vec::new();
    let mut semi_passive_sets = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        let d: EdgeSet = trees[..i].iter().filter_map(|s| first_divergence(g, *s, *t)).collect();
        divergence_sets.push(d);
        semi_passive_sets.push(semi_passive(g, *t, &emerald_order(g, *t)));
    }
    let h_vector = IntegerPolynomial::from_exponents(semi_passive_sets.iter().map(|s| s.len()));
    let mut covered_sets = None;
    let mut semi_active_violations = Vec::new();
    if geometric {
        let mut cov = Vec::new();
        for (i, t) in trees.iter().enumerate() {
            let mut covered = EdgeSet::EMPTY;
            for e in t.iter() {
                let facet = t.without(e);
                let k = cut_functional(g, *t, e);
                let cut = fundamental_cut(g, *t, e);
                let mut overlapping_other_side = Vec::new();
                for (j, s) in trees.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    let crossing: Vec<EdgeId> = s.iter().filter(|f| cut.contains(*f)).collect();
                    if crossing.len() != 1 || functional_on_edge(g, &k, crossing[0]) >= 0 {
                        continue;
                    }
                    if relints_meet(g, facet, s.without(crossing[0])) {
                        overlapping_other_side.push(j);
                    }
                }
                let is_covered = !overlapping_other_side.is_empty() && overlapping_other_side.iter().all(|j| *j < i);
                if is_covered {
                    covered.insert(e);
                } else if trees[..i].iter().any(|s| relint_meets(g, facet, *s)) {
                    semi_active_violations.push((i, e));
                }
            }
            cov.push(covered);
        }
        covered_sets = Some(cov);
    }
    Ok(ShellingReport {
        divergence_sets,
        semi_passive_sets,
        covered_sets,
        semi_active_violations,
        h_vector,
        interior: interior.clone(),
    })
}

/// Number of lattice points of `k Q_G` for `k = 0..=kmax`, as the number of distinct sums of
/// `k` vertices.
pub fn ehrhart_values(g: &RibbonBipartiteGraph, kmax: usize) -> Result<Vec<u128>> {
    require_simple(g)?;
    let verts: Vec<(usize, usize)> = g.edges().map(|e| (g.ends(e)[0].idx(), g.ends(e)[1].idx())).collect();
    let mut layer: HashSet<Vec<u16>> = HashSet::new();
    layer.insert(vec![0; g.node_count()]);
    let mut out = vec![1u128];
    for _ in 0..kmax {
        let mut next = HashSet::with_capacity(layer.len() * 2);
        for p in &layer {
            for (a, b) in &verts {
                let mut q = p.clone();
                q[*a] += 1;
                q[*b] += 1;
                next.insert(q);
            }
        }
        out.push(next.len() as u128);
        layer = next;
    }
    Ok(out)
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Coefficients `a_k` with `ε(k) = Σ_i a_i C(d + k - i, d)`.
pub fn fit_binomial(values: &[u128], d: usize) -> Vec<i128> {
    let d = d as i128;
    let mut a: Vec<i128> = Vec::with_capacity(values.len());
    for (k, v) in values.iter().enumerate() {
        let k = k as i128;
        let s: i128 = a.iter().enumerate().map(|(i, ai)| ai * binom(d + k - i as i128, d)).sum();
        a.push(*v as i128 - s);
    }
    a
}

/// Coefficients of `p(x) / (1 - x)^(d + 1)` up to `x^kmax`.
pub fn series_over_power(p: &IntegerPolynomial, d: usize, kmax: usize) -> Vec<i128> {
    let d = d as i128;
    (0..=kmax as i128)
        .map(|k| p.coeffs().iter().enumerate().map(|(i, c)| c * binom(k - i as i128 + d, d)).sum())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EhrhartReport {
    pub dimension: usize,
    pub values: Vec<u128>,
    pub fitted: Vec<i128>,
    pub interior: IntegerPolynomial,
    pub oracle_values: Option<Vec<u128>>,
    pub kato_series: Vec<i128>,
}

impl EhrhartReport {
    pub fn fit_ok(&self) -> bool {
        let n = self.fitted.len();
        self.fitted == self.interior.padded(n)[..n]
    }

    pub fn kato_ok(&self) -> bool {
        self.kato_series.iter().zip(&self.values).all(|(a, b)| *a == *b as i128)
    }

    pub fn oracle_ok(&self) -> bool {
        self.oracle_values.as_ref().is_none_or(|o| *o == self.values[..o.len()])
    }

    pub fn ok(&self) -> bool {
        self.fit_ok() && self.kato_ok() && self.oracle_ok()
    }
}

/// Ehrhart values up to `kmax`, the binomial fit, and the series of the interior polynomial
/// over `(1 - x)^(d + 1)`. Up to `oracle_kmax` the values are also counted by lattice scan.
pub fn check_ehrhart(
    g: &RibbonBipartiteGraph,
    interior: &IntegerPolynomial,
    kmax: usize,
    oracle_kmax: usize,
) -> Result<EhrhartReport> {
    let d = dimension(g);
    let values = ehrhart_values(g, kmax)?;
    let fitted = fit_binomial(&values, d);
    let oracle_values = (oracle_kmax > 0)
        .then(|| (0..=oracle_kmax.min(kmax) as u32).map(|k| crate::oracle::lattice_scan_count(g, k)).collect());
    Ok(EhrhartReport {
        dimension: d,
        kato_series: series_over_power(interior, d, kmax),
        values,
        fitted,
        interior: interior.clone(),
        oracle_values,
    })
}

/// The simplex of a spanning tree as listed vertices, for reporting.
pub fn simplex_vertices(g: &RibbonBipartiteGraph, t: EdgeSet) -> Vec<(NodeId, NodeId)> {
    t.iter().map(|e| (g.emerald_end(e), g.violet_end(e))).collect()
}
