//! The `hyperbernardi-graph v1` text format.
//!
//! ```text
//! hyperbernardi-graph v1
//! # comment
//! emerald: e1 e2
//! violet: v1 v2
//! edges:
//!   c1 e1 v1
//!   c2 e2 v1
//!   c3 e2 v2
//!   c4 e1 v2
//! rotations:
//!   v1: c1 c2
//! base: v1 c1
//! ```
//!
//! Nodes without a rotation line use the order in which their edges are listed.

use std::collections::HashMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::GraphError;
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph};

pub const HEADER: &str = "hyperbernardi-graph v1";

const KEYWORDS: [&str; 5] = ["emerald", "violet", "edges", "rotations", "base"];

#[derive(PartialEq)]
enum Section {
    None,
    Edges,
    Rotations,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.contains([':', '#', ',', '=']) && !KEYWORDS.contains(&s)
}

pub fn parse_graph(text: &str) -> Result<RibbonBipartiteGraph, GraphError> {
    let err = |line: usize, msg: &str| GraphError::Parse { line, msg: msg.to_string() };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        Some((n, _)) => return Err(err(n, "expected header `hyperbernardi-graph v1`")),
        None => return Err(err(1, "empty document")),
    }
    let mut emerald: Vec<String> = Vec::new();
    let mut violet: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    let mut rotations: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut base: Option<(usize, String, String)> = None;
    let mut section = Section::None;
    for (n, line) in lines {
        if let Some((head, rest)) = line.split_once(':') {
            let head = head.trim();
            let words: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            match head {
                "emerald" | "violet" => {
                    for w in &words {
                        if !valid_name(w) {
                            return Err(err(n, &format!("invalid node name `{w}`")));
                        }
                    }
                    if head == "emerald" { &mut emerald } else { &mut violet }.extend(words);
                    section = Section::None;
                    continue;
                }
                "edges" => {
                    if !words.is_empty() {
                        return Err(err(n, "`edges:` takes no inline values"));
                    }
                    section = Section::Edges;
                    continue;
                }
                "rotations" => {
                    if !words.is_empty() {
                        return Err(err(n, "`rotations:` takes no inline values"));
                    }
                    section = Section::Rotations;
                    continue;
                }
                "base" => {
                    if words.len() != 2 {
                        return Err(err(n, "`base:` expects a node name and an edge id"));
                    }
                    if base.is_some() {
                        return Err(err(n, "duplicate `base:`"));
                    }
                    base = Some((n, words[0].clone(), words[1].clone()));
                    section = Section::None;
                    continue;
                }
                _ if section == Section::Rotations => {
                    rotations.push((n, head.to_string(), words));
                    continue;
                }
                _ => return Err(err(n, &format!("unknown section `{head}`"))),
            }
        }
        match section {
            Section::Edges => {
                let w: Vec<&str> = line.split_whitespace().collect();
                if w.len() != 3 {
                    return Err(err(n, "edge lines are `id emeraldName violetName`"));
                }
                if !valid_name(w[0]) {
                    return Err(err(n, &format!("invalid edge id `{}`", w[0])));
                }
                edges.push((n, w[0].into(), w[1].into(), w[2].into()));
            }
            _ => return Err(err(n, "unexpected line")),
        }
    }
    let mut names = emerald.clone();
    names.extend(violet.iter().cloned());
    let mut colors = vec![Color::Emerald; emerald.len()];
    colors.extend(vec![Color::Violet; violet.len()]);
    let mut node_id = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if node_id.insert(name.clone(), NodeId(i as u32)).is_some() {
            return Err(GraphError::DuplicateName(name.clone()));
        }
    }
    let mut parts = Vec::new();
    let mut edge_id = HashMap::new();
    for (i, (n, id, a, b)) in edges.iter().enumerate() {
        let na = *node_id.get(a).ok_or_else(|| GraphError::UnknownName(a.clone()))?;
        let nb = *node_id.get(b).ok_or_else(|| GraphError::UnknownName(b.clone()))?;
        if colors[na.idx()] != Color::Emerald || colors[nb.idx()] != Color::Violet {
            return Err(err(*n, &format!("edge `{id}` must list an emerald node then a violet node")));
        }
        if edge_id.insert(id.clone(), EdgeId(i as u32)).is_some() {
            return Err(GraphError::DuplicateName(id.clone()));
        }
        parts.push((id.clone(), na, nb));
    }
    let mut rots: Vec<Option<Vec<EdgeId>>> = vec![None; names.len()];
    for (n, node, ids) in rotations {
        let x = *node_id.get(&node).ok_or_else(|| GraphError::UnknownName(node.clone()))?;
        if rots[x.idx()].is_some() {
            return Err(err(n, &format!("duplicate rotation for `{node}`")));
        }
        let ids = ids
            .iter()
            .map(|s| edge_id.get(s).copied().ok_or_else(|| GraphError::UnknownName(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        rots[x.idx()] = Some(ids);
    }
    let base = match base {
        None => None,
        Some((_, node, edge)) => Some((
            *node_id.get(&node).ok_or(GraphError::UnknownName(node))?,
            *edge_id.get(&edge).ok_or(GraphError::UnknownName(edge))?,
        )),
    };
    RibbonBipartiteGraph::from_parts(names, colors, parts, rots, base)
}

/// Serializes a graph with explicit rotations at every node.
pub fn write_graph(g: &RibbonBipartiteGraph) -> String {
    let mut s = String::new();
    s.push_str(HEADER);
    s.push('\n');
    for c in [Color::Emerald, Color::Violet] {
        let label = if c == Color::Emerald { "emerald:" } else { "violet:" };
        s.push_str(label);
        for x in g.class(c) {
            s.push(' ');
            s.push_str(g.node_name(x));
        }
        s.push('\n');
    }
    s.push_str("edges:\n");
    for e in g.edges() {
        let _ = writeln!(s, "  {} {} {}", g.edge_name(e), g.node_name(g.emerald_end(e)), g.node_name(g.violet_end(e)));
    }
    s.push_str("rotations:\n");
    for x in g.nodes() {
        let ids: Vec<&str> = g.rotation(x).iter().map(|e| g.edge_name(*e)).collect();
        let _ = writeln!(s, "  {}: {}", g.node_name(x), ids.join(" "));
    }
    let _ = writeln!(s, "base: {} {}", g.node_name(g.base_node()), g.edge_name(g.base_edge()));
    s
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const C4: &str = "hyperbernardi-graph v1
# the four-cycle
emerald: e1 e2
violet: v1 v2
edges:
  c1 e1 v1
  c2 e2 v1
  c3 e2 v2
  c4 e1 v2
base: v1 c1
";

    #[test]
    fn parses_four_cycle() {
        let g = parse_graph(C4).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 4);
        let v1 = g.node_by_name("v1").unwrap();
        let names: Vec<&str> = g.rotation(v1).iter().map(|e| g.edge_name(*e)).collect();
        assert_eq!(names, ["c1", "c2"]);
        assert_eq!(g.edge_name(g.base_edge()), "c1");
    }

    #[test]
    fn round_trip() {
        let g = parse_graph(C4).unwrap();
        let h = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn rejects_same_color_edge() {
        let doc = C4.replace("c3 e2 v2", "c3 e2 e1");
        assert!(parse_graph(&doc).is_err());
    }

    #[test]
    fn rejects_bad_rotation() {
        let doc = C4.replace("base:", "rotations:\n  v1: c1 c3\nbase:");
        assert_eq!(parse_graph(&doc), Err(GraphError::BadRotation("v1".into())));
    }

    #[test]
    fn rejects_bad_header_and_base() {
        assert!(matches!(parse_graph("hello\n"), Err(GraphError::Parse { line: 1, .. })));
        let doc = C4.replace("base: v1 c1", "base: v1 c3");
        assert_eq!(parse_graph(&doc), Err(GraphError::BadBase));
    }

    #[test]
    fn rejects_disconnected() {
        let doc = "hyperbernardi-graph v1\nemerald: a b\nviolet: x y\nedges:\n  p a x\n  q b y\n";
        assert_eq!(parse_graph(doc), Err(GraphError::Disconnected));
    }
}
