//! Two classical families of triangulations that arise as Jaeger trees: non-crossing trees of
//! a complete bipartite graph and duals of arborescences in a plane graph.

use serde::Serialize;

use crate::edgeset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph};
use crate::harness::fixtures::{planar_rotations, Orientation};
use crate::hypertree::degree_vector;
use crate::jaeger::jaeger_trees;
use crate::tour::spanning_trees;

/// Complete bipartite graph on `(m + 1) + (n + 1)` nodes drawn on two horizontal lines, emerald
/// below and violet above, rotating counterclockwise everywhere. The base is the lower left
/// node with the diagonal edge to the upper right node.
pub fn noncrossing_setup(m: usize, n: usize) -> RibbonBipartiteGraph {
    let (ne, nv) = (m + 1, n + 1);
    let mut names: Vec<String> = (0..ne).map(|i| format!("e{i}")).collect();
    names.extend((0..nv).map(|j| format!("v{j}")));
    let mut coords: Vec<(f64, f64)> = (0..ne).map(|i| (i as f64, 0.0)).collect();
    coords.extend((0..nv).map(|j| (j as f64, 1.0)));
    let colors = (0..ne + nv).map(|x| if x < ne { Color::Emerald } else { Color::Violet }).collect();
    let ends: Vec<[usize; 2]> = (0..ne).flat_map(|i| (0..nv).map(move |j| [i, ne + j])).collect();
    let rot = planar_rotations(&coords, &ends, |_| Orientation::Ccw);
    let edges = ends
        .iter()
        .map(|[a, b]| (format!("{}{}", names[*a], names[*b]), NodeId(*a as u32), NodeId(*b as u32)))
        .collect();
    let base = (NodeId(0), EdgeId((nv - 1) as u32));
    RibbonBipartiteGraph::from_parts(names, colors, edges, rot.into_iter().map(Some).collect(), Some(base))
        .expect("complete bipartite setup is valid")
}

/// True when no two edges of `t` cross in the two-line drawing of [`noncrossing_setup`].
pub fn is_noncrossing(g: &RibbonBipartiteGraph, t: EdgeSet) -> bool {
    let pos = |e: EdgeId| (g.class_index(g.emerald_end(e)), g.class_index(g.violet_end(e)));
    let es = t.to_vec();
    es.iter().enumerate().all(|(i, a)| {
        es[i + 1..].iter().all(|b| {
            let ((p, q), (r, s)) = (pos(*a), pos(*b));
            !((p < r && q > s) || (p > r && q < s))
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncrossingReport {
    pub m: usize,
    pub n: usize,
    pub jaeger: usize,
    pub noncrossing: usize,
    pub binomial: u128,
    pub sets_equal: bool,
    /// The E-cut trees in tree order have lexicographically increasing hypertrees on `E`.
    pub lexicographic: bool,
}

impl NoncrossingReport {
    pub fn ok(&self) -> bool {
        self.sets_equal && self.jaeger as u128 == self.binomial && self.lexicographic
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn check_noncrossing(m: usize, n: usize) -> NoncrossingReport {
    let g = noncrossing_setup(m, n);
    let jaeger = jaeger_trees(&g, Color::Emerald);
    let mut nc: Vec<EdgeSet> = spanning_trees(&g).into_iter().filter(|t| is_noncrossing(&g, *t)).collect();
    let mut js = jaeger.clone();
    js.sort();
    nc.sort();
    let hyper: Vec<Vec<u32>> = jaeger.iter().map(|t| degree_vector(&g, *t, Color::Emerald).values).collect();
    NoncrossingReport {
        m,
        n,
        jaeger: jaeger.len(),
        noncrossing: nc.len(),
        binomial: binomial((m + n) as u64, m as u64),
        sets_equal: js == nc,
        lexicographic: hyper.windows(2).all(|w| w[0] < w[1]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArborescenceReport {
    pub faces: usize,
    pub root_face: usize,
    /// Complements of the edge sets dual to spanning arborescences, sorted.
    pub dual_trees: Vec<EdgeSet>,
    /// V-cut Jaeger trees, sorted.
    pub jaeger: Vec<EdgeSet>,
}

impl ArborescenceReport {
    pub fn holds(&self) -> bool {
        self.dual_trees == self.jaeger
    }
}

/// Compares V-cut Jaeger trees of a plane bipartite graph with complements of the duals of
/// spanning arborescences of the dual graph rooted at the face to the right of the base edge.
/// Each edge is dualized to an arc with its violet endpoint on the left.
pub fn check_arborescence_duality(g: &RibbonBipartiteGraph) -> Result<ArborescenceReport> {
    if g.genus() != 0 {
        return Err(Error::Input(format!("embedding has genus {}, need a plane graph", g.genus())));
    }
    if g.color(g.base_node()) != Color::Violet {
        return Err(Error::Input("the base node must be violet".into()));
    }
    let faces = g.faces();
    let root = faces.face_of(g.base_node(), g.base_edge());
    let arcs: Vec<(usize, usize)> = g
        .edges()
        .map(|e| (faces.face_of(g.violet_end(e), e), faces.face_of(g.emerald_end(e), e)))
        .collect();
    let nf = faces.len();
    let incoming: Vec<Vec<EdgeId>> = (0..nf)
        .map(|f| g.edges().filter(|e| arcs[e.idx()].1 == f && arcs[e.idx()].0 != f).collect())
        .collect();
    let others: Vec<usize> = (0..nf).filter(|f| *f != root).collect();
    let mut dual_trees = Vec::new();
    let mut choice = vec![0usize; others.len()];
    if others.iter().all(|f| !incoming[*f].is_empty()) {
        loop {
            let mut parent = vec![usize::MAX; nf];
            let mut arb = EdgeSet::EMPTY;
            for (k, f) in others.iter().enumerate() {
                let e = incoming[*f][choice[k]];
                parent[*f] = arcs[e.idx()].0;
                arb.insert(e);
            }
            let reaches_root = others.iter().all(|f| {
                let mut x = *f;
                for _ in 0..nf {
                    if x == root {
                        return true;
                    }
                    x = parent[x];
                }
                x == root
            });
            if reaches_root {
                dual_trees.push(g.all_edges().difference(arb));
            }
            let mut k = 0;
            while k < others.len() {
                choice[k] += 1;
                if choice[k] < incoming[others[k]].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == others.len() {
                break;
            }
        }
    }
    dual_trees.sort();
    let mut jaeger = jaeger_trees(g, Color::Violet);
    jaeger.sort();
    Ok(ArborescenceReport { faces: nf, root_face: root, dual_trees, jaeger })
}
