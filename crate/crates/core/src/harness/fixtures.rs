//! Named fixtures. Figure transcriptions carry coordinates; rotations are computed from them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::edgeset::EdgeSet;
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph, RibbonGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperExact,
    FigureTranscription,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Cyclic order of the edges at each node by the angle of the edge, as drawn with
/// straight segments at the given coordinates.
pub fn planar_rotations(
    coords: &[(f64, f64)],
    ends: &[[usize; 2]],
    orient: impl Fn(usize) -> Orientation,
) -> Vec<Vec<EdgeId>> {
    let mut rot: Vec<Vec<(f64, EdgeId)>> = vec![Vec::new(); coords.len()];
    for (i, [a, b]) in ends.iter().enumerate() {
        for (x, y) in [(*a, *b), (*b, *a)] {
            let ang = (coords[y].1 - coords[x].1).atan2(coords[y].0 - coords[x].0);
            rot[x].push((ang, EdgeId(i as u32)));
        }
    }
    rot.into_iter()
        .enumerate()
        .map(|(x, mut v)| {
            v.sort_by(|p, q| p.0.total_cmp(&q.0));
            if orient(x) == Orientation::Cw {
                v.reverse();
            }
            v.into_iter().map(|(_, e)| e).collect()
        })
        .collect()
}

struct Drawing<'a> {
    emerald: &'a [(&'a str, (f64, f64))],
    violet: &'a [(&'a str, (f64, f64))],
    /// Edges as (emerald, violet) node names; the edge is named by concatenation.
    edges: &'a [(&'a str, &'a str)],
    emerald_orient: Orientation,
    violet_orient: Orientation,
    base: (&'a str, &'a str, &'a str),
}

fn draw(d: &Drawing) -> RibbonBipartiteGraph {
    let mut names = Vec::new();
    let mut coords = Vec::new();
    let mut colors = Vec::new();
    for (c, list) in [(Color::Emerald, d.emerald), (Color::Violet, d.violet)] {
        for (n, p) in list {
            names.push(n.to_string());
            coords.push(*p);
            colors.push(c);
        }
    }
    let id: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let ends: Vec<[usize; 2]> = d.edges.iter().map(|(a, b)| [id[*a], id[*b]]).collect();
    let rot = planar_rotations(&coords, &ends, |x| {
        if colors[x] == Color::Emerald {
            d.emerald_orient
        } else {
            d.violet_orient
        }
    });
    let edges = d
        .edges
        .iter()
        .map(|(a, b)| (format!("{a}{b}"), NodeId(id[*a] as u32), NodeId(id[*b] as u32)))
        .collect();
    let base_edge = d
        .edges
        .iter()
        .position(|(a, b)| (*a, *b) == (d.base.1, d.base.2))
        .expect("base edge listed");
    RibbonBipartiteGraph::from_parts(
        names,
        colors,
        edges,
        rot.into_iter().map(Some).collect(),
        Some((NodeId(id[d.base.0] as u32), EdgeId(base_edge as u32))),
    )
    .expect("fixture is valid")
}

const FIX_A_EDGES: [(&str, &str); 9] = [
    ("e0", "v0"),
    ("e0", "v1"),
    ("e1", "v1"),
    ("e1", "v2"),
    ("e2", "v0"),
    ("e2", "v2"),
    ("e3", "v0"),
    ("e3", "v1"),
    ("e3", "v2"),
];

/// The running example: four emerald and three violet nodes, nine edges, drawn in the plane
/// with counterclockwise rotations everywhere. Base node `v0`, base edge `e0v0`.
pub fn fix_a() -> RibbonBipartiteGraph {
    draw(&Drawing {
        emerald: &[("e0", (0.0, 0.1)), ("e1", (3.0, 5.0)), ("e2", (-3.0, 5.0)), ("e3", (0.0, 3.55))],
        violet: &[("v0", (-3.0, 2.0)), ("v1", (3.0, 2.0)), ("v2", (0.0, 6.9))],
        edges: &FIX_A_EDGES,
        emerald_orient: Orientation::Ccw,
        violet_orient: Orientation::Ccw,
        base: ("v0", "e0", "v0"),
    })
}

/// The running example with the shelling-figure ribbon structure: counterclockwise at
/// violet nodes, clockwise at emerald nodes.
pub fn fix_a_shelling() -> RibbonBipartiteGraph {
    draw(&Drawing {
        emerald: &[("e0", (4.0, 0.0)), ("e1", (8.0, 6.5)), ("e2", (0.0, 6.5)), ("e3", (4.0, 4.0))],
        violet: &[("v0", (0.0, 2.0)), ("v1", (8.0, 2.0)), ("v2", (4.0, 8.5))],
        edges: &FIX_A_EDGES,
        emerald_orient: Orientation::Cw,
        violet_orient: Orientation::Ccw,
        base: ("v0", "e0", "v0"),
    })
}

/// The seven V-cut Jaeger trees of [`fix_a_shelling`] in the order drawn.
pub fn fix_a_shelling_trees(g: &RibbonBipartiteGraph) -> Vec<EdgeSet> {
    let lists: [&[&str]; 7] = [
        &["e0v1", "e1v1", "e1v2", "e2v2", "e2v0", "e3v1"],
        &["e0v1", "e1v2", "e2v2", "e2v0", "e3v2", "e3v1"],
        &["e0v1", "e1v1", "e2v0", "e3v0", "e3v2", "e3v1"],
        &["e0v1", "e1v1", "e1v2", "e2v0", "e3v0", "e3v2"],
        &["e0v0", "e0v1", "e1v2", "e2v2", "e2v0", "e3v2"],
        &["e0v0", "e0v1", "e1v2", "e2v0", "e3v0", "e3v2"],
        &["e0v0", "e0v1", "e1v1", "e1v2", "e2v0", "e3v0"],
    ];
    lists.iter().map(|l| edge_set(g, l)).collect()
}

/// The running example with colors swapped: emerald `left`, `top`, `right`, four violet
/// nodes; clockwise at emerald and counterclockwise at violet nodes. Base node `left`,
/// base edge the vertical edge to `upper_left`.
pub fn fix_b() -> RibbonBipartiteGraph {
    draw(&Drawing {
        emerald: &[("left", (-3.0, 2.0)), ("top", (0.0, 6.9)), ("right", (3.0, 2.0))],
        violet: &[
            ("bottom", (0.0, 0.1)),
            ("upper_right", (3.0, 5.0)),
            ("upper_left", (-3.0, 5.0)),
            ("center", (0.0, 3.55)),
        ],
        edges: &[
            ("left", "bottom"),
            ("right", "bottom"),
            ("right", "upper_right"),
            ("top", "upper_right"),
            ("left", "upper_left"),
            ("top", "upper_left"),
            ("left", "center"),
            ("right", "center"),
            ("top", "center"),
        ],
        emerald_orient: Orientation::Cw,
        violet_orient: Orientation::Ccw,
        base: ("left", "left", "upper_left"),
    })
}

/// The four-cycle `e1 v1 e2 v2` with edges `c1 = e1v1`, `c2 = e2v1`, `c3 = e2v2`, `c4 = e1v2`.
pub fn c4() -> RibbonBipartiteGraph {
    let n = |i| NodeId(i);
    RibbonBipartiteGraph::from_parts(
        ["e1", "e2", "v1", "v2"].map(String::from).to_vec(),
        vec![Color::Emerald, Color::Emerald, Color::Violet, Color::Violet],
        vec![
            ("c1".into(), n(0), n(2)),
            ("c2".into(), n(1), n(2)),
            ("c3".into(), n(1), n(3)),
            ("c4".into(), n(0), n(3)),
        ],
        vec![None; 4],
        Some((n(2), EdgeId(0))),
    )
    .expect("valid")
}

/// A single edge `a`-`x`.
pub fn single_edge() -> RibbonBipartiteGraph {
    RibbonBipartiteGraph::from_parts(
        vec!["a".into(), "x".into()],
        vec![Color::Emerald, Color::Violet],
        vec![("ax".into(), NodeId(0), NodeId(1))],
        vec![None; 2],
        Some((NodeId(1), EdgeId(0))),
    )
    .expect("valid")
}

/// The ordinary plane graph of the tour example: a four-cycle `v1 v2 v3 v4` with chord
/// `e5 = v2v4`, counterclockwise rotations, base node `v1`, base edge `e1`.
pub fn fig2() -> RibbonGraph {
    let coords = [(8.0, 0.0), (4.0, 1.5), (0.0, 0.0), (4.0, -1.5)];
    let ends = [[0, 1], [1, 2], [2, 3], [3, 0], [1, 3]];
    let rot = planar_rotations(&coords, &ends, |_| Orientation::Ccw);
    RibbonGraph::from_parts(
        ["v1", "v2", "v3", "v4"].map(String::from).to_vec(),
        ends.iter()
            .enumerate()
            .map(|(i, [a, b])| (format!("e{}", i + 1), NodeId(*a as u32), NodeId(*b as u32)))
            .collect(),
        rot.into_iter().map(Some).collect(),
        Some((NodeId(0), EdgeId(0))),
    )
    .expect("valid")
}

pub fn fig2_tree(g: &RibbonGraph) -> EdgeSet {
    ["e1", "e3", "e5"].iter().map(|n| g.edge_by_name(n).unwrap()).collect()
}

/// Bipartite subdivision of [`fig2`] as drawn in the matching example: emerald `n1`..`n5`
/// on the edges, violet `n6`..`n9` the original nodes; counterclockwise everywhere, base
/// node `n8`, base edge `n2n8`.
pub fn fig10() -> RibbonBipartiteGraph {
    draw(&Drawing {
        emerald: &[
            ("n1", (6.0, -1.0)),
            ("n2", (2.0, -1.0)),
            ("n3", (2.0, 1.0)),
            ("n4", (6.0, 1.0)),
            ("n5", (4.0, 0.0)),
        ],
        violet: &[("n6", (8.0, 0.0)), ("n7", (4.0, -2.0)), ("n8", (0.0, 0.0)), ("n9", (4.0, 2.0))],
        edges: &[
            ("n2", "n8"),
            ("n3", "n8"),
            ("n5", "n9"),
            ("n2", "n7"),
            ("n1", "n7"),
            ("n4", "n6"),
            ("n1", "n6"),
            ("n5", "n7"),
            ("n4", "n9"),
            ("n3", "n9"),
        ],
        emerald_orient: Orientation::Ccw,
        violet_orient: Orientation::Ccw,
        base: ("n8", "n2", "n8"),
    })
}

/// Spanning tree of the matching example: every edge except `n4n6` and `n2n8`.
pub fn fig10_tree(g: &RibbonBipartiteGraph) -> EdgeSet {
    g.all_edges().difference(edge_set(g, &["n4n6", "n2n8"]))
}

/// The edges of [`fig10`] listed in the order of their labels in the drawing.
pub fn fig10_labelled_order(g: &RibbonBipartiteGraph) -> Vec<EdgeId> {
    ["n2n8", "n3n8", "n5n9", "n2n7", "n1n7", "n4n6", "n1n6", "n5n7", "n4n9", "n3n9"]
        .iter()
        .map(|n| g.edge_by_name(n).unwrap())
        .collect()
}

/// Spanning tree and explicit edge order of the semi-passivity example on the running graph.
pub fn fig5(g: &RibbonBipartiteGraph) -> (EdgeSet, Vec<EdgeId>) {
    let order: Vec<EdgeId> = ["e0v1", "e0v0", "e3v1", "e3v2", "e1v1", "e1v2", "e2v0", "e2v2", "e3v0"]
        .iter()
        .map(|n| g.edge_by_name(n).unwrap())
        .collect();
    let tree = [1, 3, 4, 5, 7, 8].iter().map(|i| order[*i]).collect();
    (tree, order)
}

/// Bipartite subdivision of a drawing of `K5` with straight edges (crossings ignored).
/// Counterclockwise at `p1`, `p2`, `p4`, clockwise at `p3`, `p5`. Emerald node `mij`
/// subdivides `pi pj`. Base node `p4` (top), base edge toward `m45`.
pub fn k5() -> RibbonBipartiteGraph {
    let pts = [(2.0, 0.0), (10.0, 0.0), (12.0, 6.0), (6.0, 10.0), (0.0, 6.0)];
    let mut names = Vec::new();
    let mut coords = Vec::new();
    let mut colors = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            names.push(format!("m{}{}", i + 1, j + 1));
            let (a, b): ((f64, f64), (f64, f64)) = (pts[i], pts[j]);
            coords.push(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0));
            colors.push(Color::Emerald);
            pairs.push((i, j));
        }
    }
    for (i, p) in pts.iter().enumerate() {
        names.push(format!("p{}", i + 1));
        coords.push(*p);
        colors.push(Color::Violet);
    }
    let mut ends = Vec::new();
    let mut edges = Vec::new();
    for (m, (i, j)) in pairs.iter().enumerate() {
        for p in [*i, *j] {
            ends.push([m, 10 + p]);
            edges.push((format!("{}p{}", names[m], p + 1), NodeId(m as u32), NodeId((10 + p) as u32)));
        }
    }
    let rot = planar_rotations(&coords, &ends, |x| match x {
        12 | 14 => Orientation::Cw,
        _ => Orientation::Ccw,
    });
    let base_edge = edges.iter().position(|(n, _, _)| n == "m45p4").unwrap();
    RibbonBipartiteGraph::from_parts(
        names,
        colors,
        edges,
        rot.into_iter().map(Some).collect(),
        Some((NodeId(13), EdgeId(base_edge as u32))),
    )
    .expect("valid")
}

/// The two drawn spanning trees of [`k5`].
pub fn k5_trees(g: &RibbonBipartiteGraph) -> (EdgeSet, EdgeSet) {
    let a = edge_set(
        g,
        &[
            "m12p1", "m12p2", "m23p2", "m23p3", "m34p4", "m45p5", "m15p5", "m15p1", "m13p3", "m35p3", "m25p5", "m24p2",
            "m24p4", "m14p1",
        ],
    );
    let b = edge_set(
        g,
        &[
            "m12p2", "m23p2", "m23p3", "m34p4", "m45p5", "m15p5", "m15p1", "m13p1", "m13p3", "m35p3", "m25p2", "m24p4",
            "m14p4", "m14p1",
        ],
    );
    (a, b)
}

pub fn edge_set(g: &RibbonGraph, names: &[&str]) -> EdgeSet {
    names
        .iter()
        .map(|n| g.edge_by_name(n).unwrap_or_else(|| panic!("unknown edge {n}")))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub provenance: Provenance,
    pub notes: &'static str,
    pub graph: RibbonBipartiteGraph,
}

pub fn all() -> Vec<Fixture> {
    use Provenance::*;
    vec![
        Fixture {
            name: "fix-a",
            provenance: PaperExact,
            notes: "node and edge labels as in the text; rotations from the drawing",
            graph: fix_a(),
        },
        Fixture {
            name: "fix-a-shelling",
            provenance: FigureTranscription,
            notes: "coordinates and the seven listed trees read off the shelling figure",
            graph: fix_a_shelling(),
        },
        Fixture {
            name: "fix-b",
            provenance: FigureTranscription,
            notes: "node names invented from positions in the process figure; embedding has genus 1",
            graph: fix_b(),
        },
        Fixture { name: "c4", provenance: Derived, notes: "rotations follow edge listing", graph: c4() },
        Fixture {
            name: "fig10",
            provenance: FigureTranscription,
            notes: "coordinates read off the matching figure; edge labels give the violet T-order",
            graph: fig10(),
        },
        Fixture {
            name: "k5",
            provenance: FigureTranscription,
            notes: "vertex positions and the orientation at each vertex read off the drawing",
            graph: k5(),
        },
        Fixture { name: "single-edge", provenance: Derived, notes: "", graph: single_edge() },
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
