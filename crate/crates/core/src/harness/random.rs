//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeId, NodeId, RibbonBipartiteGraph, RibbonGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_emerald: usize,
    pub max_violet: usize,
    pub max_edges: usize,
}

impl Bounds {
    pub fn new(max_emerald: usize, max_violet: usize, max_edges: usize) -> Self {
        Bounds { max_emerald, max_violet, max_edges }
    }

    /// Parses `"E,V,M"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Input(format!("bad bounds `{s}`, expected E,V,M")))?;
        match parts[..] {
            [e, v, m] => Ok(Bounds::new(e, v, m)),
            _ => Err(Error::Input(format!("bad bounds `{s}`, expected E,V,M"))),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected bipartite graph with random rotations and base, deterministic in `seed`.
pub fn random_instance(seed: u64, bounds: Bounds) -> Result<RibbonBipartiteGraph> {
    random_instance_with(&mut rng(seed), bounds)
}

pub fn random_instance_with(rng: &mut impl Rng, bounds: Bounds) -> Result<RibbonBipartiteGraph> {
    let Bounds { max_emerald, max_violet, max_edges } = bounds;
    if max_emerald == 0 || max_violet == 0 || max_edges == 0 {
        return Err(Error::Input(format!("infeasible bounds {max_emerald},{max_violet},{max_edges}")));
    }
    if max_edges > crate::edgeset::MAX_EDGES {
        return Err(Error::Input(format!("at most {} edges are supported", crate::edgeset::MAX_EDGES)));
    }
    let ne = rng.gen_range(1..=max_emerald.min(max_edges));
    let nv = rng.gen_range(1..=max_violet.min(max_edges + 1 - ne));
    let lo = ne + nv - 1;
    let m = rng.gen_range(lo..=max_edges.min(ne * nv));

    // Emerald nodes are 0..ne, violet nodes ne..ne+nv.
    let mut pairs: Vec<(usize, usize)> = vec![(0, ne)];
    let mut have_e = vec![0];
    let mut have_v = vec![ne];
    let mut rest: Vec<usize> = (1..ne).chain(ne + 1..ne + nv).collect();
    rest.shuffle(rng);
    for x in rest {
        if x < ne {
            pairs.push((x, *have_v.choose(rng).unwrap()));
            have_e.push(x);
        } else {
            pairs.push((*have_e.choose(rng).unwrap(), x));
            have_v.push(x);
        }
    }
    let mut missing: Vec<(usize, usize)> =
        (0..ne).flat_map(|a| (ne..ne + nv).map(move |b| (a, b))).filter(|p| !pairs.contains(p)).collect();
    missing.shuffle(rng);
    pairs.extend(missing.into_iter().take(m - pairs.len()));
    pairs.sort();

    let mut names: Vec<String> = (0..ne).map(|i| format!("e{i}")).collect();
    names.extend((0..nv).map(|i| format!("v{i}")));
    let colors: Vec<Color> = (0..ne + nv).map(|x| if x < ne { Color::Emerald } else { Color::Violet }).collect();
    let edges: Vec<(String, NodeId, NodeId)> = pairs
        .iter()
        .map(|&(a, b)| (format!("{}{}", names[a], names[b]), NodeId(a as u32), NodeId(b as u32)))
        .collect();
    let ends: Vec<[usize; 2]> = pairs.iter().map(|&(a, b)| [a, b]).collect();
    let (rot, base) = random_rotations(rng, ne + nv, &ends);
    RibbonBipartiteGraph::from_parts(names, colors, edges, rot.into_iter().map(Some).collect(), Some(base))
        .map_err(Error::from)
}

fn random_rotations(rng: &mut impl Rng, n: usize, ends: &[[usize; 2]]) -> (Vec<Vec<EdgeId>>, (NodeId, EdgeId)) {
    let mut rot: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for (i, [a, b]) in ends.iter().enumerate() {
        rot[*a].push(EdgeId(i as u32));
        rot[*b].push(EdgeId(i as u32));
    }
    for r in rot.iter_mut() {
        r.shuffle(rng);
    }
    let x = rng.gen_range(0..n);
    let e = *rot[x].choose(rng).unwrap();
    (rot, (NodeId(x as u32), e))
}

/// The same graph with fresh random rotations and a random base.
pub fn random_setup(rng: &mut impl Rng, g: &RibbonBipartiteGraph) -> RibbonBipartiteGraph {
    let mut rot: Vec<Vec<EdgeId>> = g.nodes().map(|x| g.rotation(x).to_vec()).collect();
    for r in rot.iter_mut() {
        r.shuffle(rng);
    }
    let x = NodeId(rng.gen_range(0..g.node_count()) as u32);
    let e = *rot[x.idx()].choose(rng).unwrap();
    g.with_rotations(rot).and_then(|h| h.with_base(x, e)).expect("a permuted setup stays valid")
}

/// A random node order of one color class.
pub fn random_class_order(rng: &mut impl Rng, g: &RibbonBipartiteGraph, side: Color) -> Vec<NodeId> {
    let mut c = g.class(side);
    c.shuffle(rng);
    c
}

/// A connected loopless multigraph with `2..=max_vertices` vertices and at most `max_edges`
/// edges, with random rotations and base.
pub fn random_ordinary(seed: u64, max_vertices: usize, max_edges: usize) -> Result<RibbonGraph> {
    if max_vertices < 2 || max_edges == 0 {
        return Err(Error::Input(format!("infeasible bounds {max_vertices},{max_edges}")));
    }
    let rng = &mut rng(seed);
    let n = rng.gen_range(2..=max_vertices.min(max_edges + 1));
    let m = rng.gen_range(n - 1..=max_edges);
    let mut ends: Vec<[usize; 2]> = (1..n).map(|x| [rng.gen_range(0..x), x]).collect();
    while ends.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            ends.push([a.min(b), a.max(b)]);
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = ends
        .iter()
        .enumerate()
        .map(|(i, [a, b])| (format!("a{i}"), NodeId(*a as u32), NodeId(*b as u32)))
        .collect();
    let (rot, base) = random_rotations(rng, n, &ends);
    RibbonGraph::from_parts(names, edges, rot.into_iter().map(Some).collect(), Some(base)).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_connected() {
        let b = Bounds::new(3, 3, 8);
        assert_eq!(random_instance(1, b).unwrap(), random_instance(1, b).unwrap());
        for seed in 0..300 {
            let g = random_instance(seed, Bounds::new(4, 5, 12)).unwrap();
            assert!(g.is_connected(g.all_edges()));
            assert!(!g.has_parallel_edges());
            assert!(g.edge_count() <= 12);
            assert!(g.class_size(Color::Emerald) <= 4 && g.class_size(Color::Violet) <= 5);
        }
    }

    #[test]
    fn degenerate_bounds() {
        let g = random_instance(7, Bounds::new(1, 1, 1)).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert!(random_instance(7, Bounds::new(0, 1, 1)).is_err());
        assert_eq!(Bounds::parse("4, 4,10").unwrap(), Bounds::new(4, 4, 10));
        assert!(Bounds::parse("4,4").is_err());
    }

    #[test]
    fn ordinary_graphs() {
        for seed in 0..100 {
            let g = random_ordinary(seed, 6, 9).unwrap();
            assert!(g.node_count() <= 6 && g.edge_count() <= 9);
            assert!(g.is_connected(g.all_edges()));
        }
    }
}
