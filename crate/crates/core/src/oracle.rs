//! Brute-force oracles that share no code path with the main algorithms. Campaigns use them
//! to re-verify results on small instances.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::edgeset::EdgeSet;
use crate::graph::{Color, RibbonBipartiteGraph, RibbonGraph};
use crate::hypertree::Hypertree;

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|i| !m[*i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Number of spanning trees by the matrix-tree theorem.
pub fn kirchhoff_count(g: &RibbonGraph) -> BigInt {
    let n = g.node_count();
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges() {
        let [a, b] = g.ends(e);
        let (a, b) = (a.idx(), b.idx());
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = lap.into_iter().skip(1).map(|r| r.into_iter().skip(1).collect()).collect();
    bareiss_det(minor)
}

/// Hypertrees on `side` by testing every edge subset of size `|V| - 1`. Exponential; meant
/// for graphs with at most about twenty edges.
pub fn brute_force_hypertrees(g: &RibbonBipartiteGraph, side: Color) -> Vec<Hypertree> {
    let m = g.edge_count();
    let k = g.node_count() - 1;
    let class = g.class(side);
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let t = EdgeSet(mask as u128);
        if !connected_by_search(g, t) {
            continue;
        }
        let values = class.iter().map(|x| g.degree_in(*x, t) as u32 - 1).collect();
        out.insert(Hypertree { side, values });
    }
    out.into_iter().collect()
}

fn connected_by_search(g: &RibbonGraph, t: EdgeSet) -> bool {
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![g.base_node()];
    seen[g.base_node().idx()] = true;
    while let Some(x) = stack.pop() {
        for e in g.rotation(x) {
            if t.contains(*e) {
                let y = g.other_end(*e, x);
                if !seen[y.idx()] {
                    seen[y.idx()] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|s| *s)
}

/// Lattice points of `k` times the root polytope, by scanning all pairs of compositions of
/// `k` on the two color classes and testing transportation feasibility with the Hall
/// condition over subsets of emerald nodes.
pub fn lattice_scan_count(g: &RibbonBipartiteGraph, k: u32) -> u128 {
    let em = g.class(Color::Emerald);
    let vi = g.class(Color::Violet);
    let nbr: Vec<u64> = em
        .iter()
        .map(|x| g.rotation(*x).iter().fold(0u64, |m, e| m | 1 << g.class_index(g.other_end(*e, *x))))
        .collect();
    let xs = compositions(k, em.len());
    let ys = compositions(k, vi.len());
    let mut count = 0u128;
    for x in &xs {
        for y in &ys {
            let ok = (1u64..(1 << em.len())).all(|s| {
                let supply: u32 = (0..em.len()).filter(|i| s >> i & 1 == 1).map(|i| x[i]).sum();
                let nb = (0..em.len()).filter(|i| s >> i & 1 == 1).fold(0u64, |m, i| m | nbr[i]);
                let demand: u32 = (0..vi.len()).filter(|j| nb >> j & 1 == 1).map(|j| y[j]).sum();
                supply <= demand
            });
            if ok {
                count += 1;
            }
        }
    }
    count
}

fn compositions(k: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
