//! Ribbon graphs and bipartite ribbon graphs.
//!
//! A ribbon structure is a cyclic order of the edges at every node. `succ(x, e)` is the
//! edge following `e` around `x`, `pred(x, e)` the one preceding it. Together with a base
//! node `b0` and a base edge `b0b1` incident to it, this is a *setup*.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::edgeset::{EdgeSet, MAX_EDGES};
use crate::error::GraphError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct NodeId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl NodeId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Color {
    Emerald,
    Violet,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Emerald => Color::Violet,
            Color::Violet => Color::Emerald,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Emerald => 'E',
            Color::Violet => 'V',
        }
    }

    pub fn parse(s: &str) -> Option<Color> {
        match s {
            "E" | "e" | "emerald" => Some(Color::Emerald),
            "V" | "v" | "violet" => Some(Color::Violet),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A connected loopless multigraph with a ribbon structure and a base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    node_names: Vec<String>,
    edge_names: Vec<String>,
    ends: Vec<[NodeId; 2]>,
    rotation: Vec<Vec<EdgeId>>,
    slot: Vec<[usize; 2]>,
    base_node: NodeId,
    base_edge: EdgeId,
}

impl RibbonGraph {
    /// Builds a ribbon graph. A node whose rotation is `None` uses the order in which its
    /// edges appear in `edges`. Without an explicit base the first node and its first
    /// rotation edge are used.
    pub fn from_parts(
        node_names: Vec<String>,
        edges: Vec<(String, NodeId, NodeId)>,
        rotations: Vec<Option<Vec<EdgeId>>>,
        base: Option<(NodeId, EdgeId)>,
    ) -> Result<Self, GraphError> {
        let n = node_names.len();
        if edges.is_empty() {
            return Err(GraphError::Invalid("graph has no edges".into()));
        }
        if edges.len() > MAX_EDGES {
            return Err(GraphError::TooManyEdges(edges.len()));
        }
        let mut seen = HashMap::new();
        for (i, name) in node_names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(GraphError::DuplicateName(name.clone()));
            }
        }
        let mut seen_e = HashMap::new();
        let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        let mut ends = Vec::with_capacity(edges.len());
        let mut edge_names = Vec::with_capacity(edges.len());
        for (i, (name, a, b)) in edges.into_iter().enumerate() {
            if seen_e.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateName(name));
            }
            if a.idx() >= n || b.idx() >= n {
                return Err(GraphError::Invalid(format!("edge {name} has an unknown endpoint")));
            }
            if a == b {
                return Err(GraphError::Invalid(format!("edge {name} is a loop")));
            }
            incident[a.idx()].push(EdgeId(i as u32));
            incident[b.idx()].push(EdgeId(i as u32));
            ends.push([a, b]);
            edge_names.push(name);
        }
        let mut rotation = Vec::with_capacity(n);
        for (x, inc) in incident.into_iter().enumerate() {
            match rotations.get(x).cloned().flatten() {
                None => rotation.push(inc),
                Some(rot) => {
                    let mut a = rot.clone();
                    let mut b = inc.clone();
                    a.sort();
                    b.sort();
                    if a != b {
                        return Err(GraphError::BadRotation(node_names[x].clone()));
                    }
                    rotation.push(rot);
                }
            }
        }
        let mut slot = vec![[usize::MAX; 2]; ends.len()];
        for (x, rot) in rotation.iter().enumerate() {
            for (i, e) in rot.iter().enumerate() {
                let k = if ends[e.idx()][0].idx() == x { 0 } else { 1 };
                slot[e.idx()][k] = i;
            }
        }
        let (base_node, base_edge) = match base {
            Some(b) => b,
            None => (NodeId(0), *rotation[0].first().ok_or(GraphError::Disconnected)?),
        };
        if base_node.idx() >= n || base_edge.idx() >= ends.len() || !ends[base_edge.idx()].contains(&base_node) {
            return Err(GraphError::BadBase);
        }
        let g = RibbonGraph { node_names, edge_names, ends, rotation, slot, base_node, base_edge };
        if !g.is_connected(g.all_edges()) {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.node_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count() as u32).map(NodeId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    pub fn node_name(&self, x: NodeId) -> &str {
        &self.node_names[x.idx()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.idx()]
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.node_names.iter().position(|n| n == name).map(|i| NodeId(i as u32))
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_names.iter().position(|n| n == name).map(|i| EdgeId(i as u32))
    }

    pub fn ends(&self, e: EdgeId) -> [NodeId; 2] {
        self.ends[e.idx()]
    }

    pub fn other_end(&self, e: EdgeId, x: NodeId) -> NodeId {
        let [a, b] = self.ends[e.idx()];
        if a == x {
            b
        } else {
            debug_assert_eq!(b, x);
            a
        }
    }

    pub fn rotation(&self, x: NodeId) -> &[EdgeId] {
        &self.rotation[x.idx()]
    }

    pub fn degree(&self, x: NodeId) -> usize {
        self.rotation[x.idx()].len()
    }

    pub fn base_node(&self) -> NodeId {
        self.base_node
    }

    pub fn base_edge(&self) -> EdgeId {
        self.base_edge
    }

    fn slot(&self, x: NodeId, e: EdgeId) -> usize {
        let k = if self.ends[e.idx()][0] == x { 0 } else { 1 };
        debug_assert!(self.ends[e.idx()][k] == x, "edge not incident to node");
        self.slot[e.idx()][k]
    }

    /// The edge following `e` in the rotation at `x`.
    pub fn succ(&self, x: NodeId, e: EdgeId) -> EdgeId {
        let rot = &self.rotation[x.idx()];
        rot[(self.slot(x, e) + 1) % rot.len()]
    }

    /// The edge preceding `e` in the rotation at `x`.
    pub fn pred(&self, x: NodeId, e: EdgeId) -> EdgeId {
        let rot = &self.rotation[x.idx()];
        rot[(self.slot(x, e) + rot.len() - 1) % rot.len()]
    }

    /// The first live edge after `e` at `x`, possibly `e` itself. `e` need not be live.
    pub fn succ_in(&self, x: NodeId, e: EdgeId, live: EdgeSet) -> Option<EdgeId> {
        let rot = &self.rotation[x.idx()];
        let s = self.slot(x, e);
        (1..=rot.len()).map(|k| rot[(s + k) % rot.len()]).find(|f| live.contains(*f))
    }

    pub fn pred_in(&self, x: NodeId, e: EdgeId, live: EdgeSet) -> Option<EdgeId> {
        let rot = &self.rotation[x.idx()];
        let s = self.slot(x, e);
        (1..=rot.len()).map(|k| rot[(s + rot.len() * 2 - k) % rot.len()]).find(|f| live.contains(*f))
    }

    pub fn degree_in(&self, x: NodeId, live: EdgeSet) -> usize {
        self.rotation[x.idx()].iter().filter(|e| live.contains(**e)).count()
    }

    pub fn is_connected(&self, live: EdgeSet) -> bool {
        let mut uf = UnionFind::new(self.node_count());
        let mut comps = self.node_count();
        for e in live.iter() {
            let [a, b] = self.ends(e);
            if uf.union(a.idx(), b.idx()) {
                comps -= 1;
            }
        }
        comps == 1
    }

    pub fn is_spanning_tree(&self, t: EdgeSet) -> bool {
        t.len() + 1 == self.node_count() && self.is_connected(t)
    }

    /// Component labels of the graph `(V, live)`.
    pub fn components(&self, live: EdgeSet) -> Vec<usize> {
        let mut uf = UnionFind::new(self.node_count());
        for e in live.iter() {
            let [a, b] = self.ends(e);
            uf.union(a.idx(), b.idx());
        }
        (0..self.node_count()).map(|x| uf.find(x)).collect()
    }

    pub fn view(&self, live: EdgeSet) -> EdgeSubsetView<'_> {
        EdgeSubsetView { graph: self, live }
    }

    pub fn with_base(&self, node: NodeId, edge: EdgeId) -> Result<Self, GraphError> {
        if node.idx() >= self.node_count() || edge.idx() >= self.edge_count() || !self.ends(edge).contains(&node) {
            return Err(GraphError::BadBase);
        }
        let mut g = self.clone();
        g.base_node = node;
        g.base_edge = edge;
        Ok(g)
    }

    pub fn with_rotations(&self, rotations: Vec<Vec<EdgeId>>) -> Result<Self, GraphError> {
        let edges = self
            .edges()
            .map(|e| (self.edge_name(e).to_string(), self.ends(e)[0], self.ends(e)[1]))
            .collect();
        RibbonGraph::from_parts(
            self.node_names.clone(),
            edges,
            rotations.into_iter().map(Some).collect(),
            Some((self.base_node, self.base_edge)),
        )
    }

    /// All rotations reversed; same base node, base edge becomes the predecessor of the old
    /// base edge in the original structure.
    pub fn reversed(&self) -> Self {
        let mut g = self.clone();
        g.base_edge = self.pred(self.base_node, self.base_edge);
        for rot in g.rotation.iter_mut() {
            rot.reverse();
        }
        for (x, rot) in g.rotation.iter().enumerate() {
            for (i, e) in rot.iter().enumerate() {
                let k = if g.ends[e.idx()][0].idx() == x { 0 } else { 1 };
                g.slot[e.idx()][k] = i;
            }
        }
        g
    }

    /// Face-tracing permutation: dart `(x, e)` goes to `(y, succ(y, e))` where `y` is the other end.
    /// With counterclockwise rotations the orbit of `(x, e)` traces the face on the right of `x -> y`.
    pub fn faces(&self) -> Faces {
        let mut face_of = HashMap::new();
        let mut faces = Vec::new();
        for e in self.edges() {
            for x in self.ends(e) {
                if face_of.contains_key(&(x, e)) {
                    continue;
                }
                let id = faces.len();
                let mut orbit = Vec::new();
                let (mut cx, mut ce) = (x, e);
                loop {
                    face_of.insert((cx, ce), id);
                    orbit.push((cx, ce));
                    let y = self.other_end(ce, cx);
                    let ne = self.succ(y, ce);
                    cx = y;
                    ce = ne;
                    if (cx, ce) == (x, e) {
                        break;
                    }
                }
                faces.push(orbit);
            }
        }
        Faces { face_of, faces }
    }

    pub fn genus(&self) -> usize {
        let f = self.faces().len() as i64;
        let chi = self.node_count() as i64 - self.edge_count() as i64 + f;
        ((2 - chi) / 2) as usize
    }

    /// Bipartite subdivision: violet nodes are the nodes of `self`, emerald nodes its edges.
    /// Edge `e = ab` becomes half-edges `2e` (at `a`) and `2e + 1` (at `b`).
    pub fn subdivision(&self) -> RibbonBipartiteGraph {
        let n = self.node_count();
        let mut names: Vec<String> = self.node_names.clone();
        let mut colors = vec![Color::Violet; n];
        for e in self.edges() {
            names.push(format!("m_{}", self.edge_name(e)));
            colors.push(Color::Emerald);
        }
        let mut edges = Vec::new();
        for e in self.edges() {
            let m = NodeId((n + e.idx()) as u32);
            let [a, b] = self.ends(e);
            edges.push((format!("{}@{}", self.edge_name(e), self.node_name(a)), m, a));
            edges.push((format!("{}@{}", self.edge_name(e), self.node_name(b)), m, b));
        }
        let half = |x: NodeId, e: EdgeId| EdgeId(2 * e.0 + if self.ends(e)[0] == x { 0 } else { 1 });
        let mut rotations: Vec<Option<Vec<EdgeId>>> = Vec::new();
        for x in self.nodes() {
            rotations.push(Some(self.rotation(x).iter().map(|e| half(x, *e)).collect()));
        }
        for _ in self.edges() {
            rotations.push(None);
        }
        let base = (self.base_node, half(self.base_node, self.base_edge));
        RibbonBipartiteGraph::from_parts(names, colors, edges, rotations, Some(base))
            .expect("subdivision of a valid ribbon graph is valid")
    }

    pub fn node_names(&self) -> &[String] {
        &self.node_names
    }
}

/// Faces of a ribbon graph as dart orbits.
#[derive(Clone, Debug)]
pub struct Faces {
    face_of: HashMap<(NodeId, EdgeId), usize>,
    faces: Vec<Vec<(NodeId, EdgeId)>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_of(&self, x: NodeId, e: EdgeId) -> usize {
        self.face_of[&(x, e)]
    }

    pub fn darts(&self, f: usize) -> &[(NodeId, EdgeId)] {
        &self.faces[f]
    }
}

/// A ribbon graph with a proper two-coloring into emerald and violet nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonBipartiteGraph {
    ribbon: RibbonGraph,
    colors: Vec<Color>,
}

impl Deref for RibbonBipartiteGraph {
    type Target = RibbonGraph;

    fn deref(&self) -> &RibbonGraph {
        &self.ribbon
    }
}

impl RibbonBipartiteGraph {
    pub fn from_parts(
        node_names: Vec<String>,
        colors: Vec<Color>,
        edges: Vec<(String, NodeId, NodeId)>,
        rotations: Vec<Option<Vec<EdgeId>>>,
        base: Option<(NodeId, EdgeId)>,
    ) -> Result<Self, GraphError> {
        if colors.len() != node_names.len() {
            return Err(GraphError::Invalid("color list length mismatch".into()));
        }
        for (name, a, b) in &edges {
            let (ca, cb) = (colors.get(a.idx()), colors.get(b.idx()));
            if ca.is_some() && ca == cb {
                return Err(GraphError::NotBipartite(name.clone()));
            }
        }
        let ribbon = RibbonGraph::from_parts(node_names, edges, rotations, base)?;
        Ok(RibbonBipartiteGraph { ribbon, colors })
    }

    pub fn ribbon(&self) -> &RibbonGraph {
        &self.ribbon
    }

    pub fn color(&self, x: NodeId) -> Color {
        self.colors[x.idx()]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Nodes of one color class in id order.
    pub fn class(&self, c: Color) -> Vec<NodeId> {
        self.nodes().filter(|x| self.color(*x) == c).collect()
    }

    pub fn class_size(&self, c: Color) -> usize {
        self.colors.iter().filter(|x| **x == c).count()
    }

    /// Position of `x` within its color class.
    pub fn class_index(&self, x: NodeId) -> usize {
        let c = self.color(x);
        self.colors[..x.idx()].iter().filter(|y| **y == c).count()
    }

    pub fn end_of_color(&self, e: EdgeId, c: Color) -> NodeId {
        let [a, b] = self.ends(e);
        if self.color(a) == c {
            a
        } else {
            b
        }
    }

    pub fn emerald_end(&self, e: EdgeId) -> NodeId {
        self.end_of_color(e, Color::Emerald)
    }

    pub fn violet_end(&self, e: EdgeId) -> NodeId {
        self.end_of_color(e, Color::Violet)
    }

    /// Same ribbon structure and base with the two colors swapped.
    pub fn transpose(&self) -> Self {
        RibbonBipartiteGraph { ribbon: self.ribbon.clone(), colors: self.colors.iter().map(|c| c.other()).collect() }
    }

    pub fn reversed_setup(&self) -> Self {
        RibbonBipartiteGraph { ribbon: self.ribbon.reversed(), colors: self.colors.clone() }
    }

    pub fn with_base(&self, node: NodeId, edge: EdgeId) -> Result<Self, GraphError> {
        Ok(RibbonBipartiteGraph { ribbon: self.ribbon.with_base(node, edge)?, colors: self.colors.clone() })
    }

    pub fn with_rotations(&self, rotations: Vec<Vec<EdgeId>>) -> Result<Self, GraphError> {
        Ok(RibbonBipartiteGraph { ribbon: self.ribbon.with_rotations(rotations)?, colors: self.colors.clone() })
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges().any(|e| {
            let mut k = self.ends(e);
            k.sort();
            !seen.insert(k)
        })
    }

    /// True when every emerald node has degree two, i.e. the graph subdivides an ordinary graph.
    pub fn is_subdivision(&self) -> bool {
        self.class(Color::Emerald).iter().all(|x| self.degree(*x) == 2)
    }

    /// The ordinary ribbon graph obtained by smoothing the degree-two emerald nodes.
    pub fn unsubdivide(&self) -> Option<RibbonGraph> {
        if !self.is_subdivision() || self.color(self.base_node()) != Color::Violet {
            return None;
        }
        let violet = self.class(Color::Violet);
        let vid: HashMap<NodeId, NodeId> = violet.iter().enumerate().map(|(i, x)| (*x, NodeId(i as u32))).collect();
        let emerald = self.class(Color::Emerald);
        let mut edges = Vec::new();
        let mut edge_of_half = HashMap::new();
        for (i, m) in emerald.iter().enumerate() {
            let rot = self.rotation(*m);
            let a = self.other_end(rot[0], *m);
            let b = self.other_end(rot[1], *m);
            if a == b {
                return None;
            }
            edges.push((self.node_name(*m).to_string(), vid[&a], vid[&b]));
            edge_of_half.insert(rot[0], EdgeId(i as u32));
            edge_of_half.insert(rot[1], EdgeId(i as u32));
        }
        let rotations = violet.iter().map(|x| Some(self.rotation(*x).iter().map(|h| edge_of_half[h]).collect())).collect();
        let names = violet.iter().map(|x| self.node_name(*x).to_string()).collect();
        let base = (vid[&self.base_node()], edge_of_half[&self.base_edge()]);
        RibbonGraph::from_parts(names, edges, rotations, Some(base)).ok()
    }
}

/// A ribbon graph restricted to a subset of live edges; rotations skip dead edges.
#[derive(Clone, Copy)]
pub struct EdgeSubsetView<'a> {
    pub graph: &'a RibbonGraph,
    pub live: EdgeSet,
}

impl<'a> EdgeSubsetView<'a> {
    pub fn succ(&self, x: NodeId, e: EdgeId) -> Option<EdgeId> {
        self.graph.succ_in(x, e, self.live)
    }

    pub fn pred(&self, x: NodeId, e: EdgeId) -> Option<EdgeId> {
        self.graph.pred_in(x, e, self.live)
    }

    pub fn degree(&self, x: NodeId) -> usize {
        self.graph.degree_in(x, self.live)
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected(self.live)
    }

    pub fn remove(&self, e: EdgeId) -> EdgeSubsetView<'a> {
        EdgeSubsetView { graph: self.graph, live: self.live.without(e) }
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
