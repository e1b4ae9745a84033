use std::collections::BTreeSet;

use hyperbernardi::graph::{Color, NodeId, RibbonBipartiteGraph};
use hyperbernardi::harness::fixtures;
use hyperbernardi::harness::random::{self, random_class_order, Bounds};
use hyperbernardi::hypertree::*;
use hyperbernardi::oracle::{brute_force_hypertrees, kirchhoff_count};
use hyperbernardi::ordinary::{break_divisors, tutte_check};
use hyperbernardi::polytope::{maximize, q, LpOutcome, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Activities straight from the definitions, over a brute-force hypertree set.
fn oracle_polynomials(g: &RibbonBipartiteGraph, side: Color, order: &[NodeId]) -> (Vec<i128>, Vec<i128>) {
    let set: BTreeSet<Vec<u32>> = brute_force_hypertrees(g, side).into_iter().map(|f| f.values).collect();
    let pos: Vec<usize> = order.iter().map(|x| g.class_index(*x)).collect();
    let n = pos.len();
    let mut int = vec![0i128; n + 1];
    let mut ext = vec![0i128; n + 1];
    for f in &set {
        let moved = |from: usize, to: usize| {
            let mut h = f.clone();
            if h[from] == 0 {
                return false;
            }
            h[from] -= 1;
            h[to] += 1;
            set.contains(&h)
        };
        let i = (0..n).filter(|&a| (0..a).any(|b| moved(pos[a], pos[b]))).count();
        let e = (0..n).filter(|&a| (0..a).any(|b| moved(pos[b], pos[a]))).count();
        int[i] += 1;
        ext[e] += 1;
    }
    let trim = |mut v: Vec<i128>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    (trim(int), trim(ext))
}

#[test]
fn running_example_interior() {
    let g = fixtures::fix_a();
    let mut rng = random::rng(11);
    for side in [Color::Emerald, Color::Violet] {
        assert_eq!(enumerate_hypertrees(&g, side).len(), 7);
        assert_eq!(interior_polynomial(&g, side, None).coeffs(), &[1, 3, 3]);
        for _ in 0..10 {
            let order = random_class_order(&mut rng, &g, side);
            assert_eq!(interior_polynomial(&g, side, Some(&order)).coeffs(), &[1, 3, 3]);
        }
    }
}

#[test]
fn small_interior_values() {
    let c4 = fixtures::c4();
    assert_eq!(interior_polynomial(&c4, Color::Emerald, None).coeffs(), &[1, 1]);
    let h: Vec<String> = enumerate_hypertrees(&c4, Color::Emerald).iter().map(|f| f.literal(&c4)).collect();
    assert_eq!(h, ["e1=0,e2=1", "e1=1,e2=0"]);
    let one = fixtures::single_edge();
    assert_eq!(interior_polynomial(&one, Color::Emerald, None).coeffs(), &[1]);
}

#[test]
fn degree_vector_and_membership() {
    let g = fixtures::c4();
    let t = fixtures::edge_set(&g, &["c1", "c2", "c3"]);
    let f = degree_vector(&g, t, Color::Emerald);
    assert_eq!(f.literal(&g), "e1=0,e2=1");
    assert!(is_hypertree(&g, &f));
    assert!(!is_hypertree(&g, &Hypertree::parse(&g, "e1=1,e2=1").unwrap()));
    assert!(Hypertree::parse(&g, "e1=1,v1=0").is_err());
    assert!(Hypertree::parse(&g, "e1=1").is_err());
    assert!(can_transfer(&g, &f, g.node_by_name("e2").unwrap(), g.node_by_name("e1").unwrap()));
    assert!(!can_transfer(&g, &f, g.node_by_name("e1").unwrap(), g.node_by_name("e2").unwrap()));
}

#[test]
fn enumeration_agrees_with_brute_force() {
    for seed in 0..80 {
        let g = random::random_instance(seed, Bounds::new(5, 5, 12)).unwrap();
        for side in [Color::Emerald, Color::Violet] {
            let sweep = enumerate_hypertrees(&g, side);
            assert_eq!(sweep, brute_force_hypertrees(&g, side), "seed {seed}");
            assert_eq!(sweep, enumerate_hypertrees_by_search(&g, side), "seed {seed}");
        }
        assert_eq!(enumerate_hypertrees(&g, Color::Emerald).len(), enumerate_hypertrees(&g, Color::Violet).len());
    }
}

#[test]
fn activities_match_definitions() {
    let mut rng = random::rng(5);
    for seed in 0..60 {
        let g = random::random_instance(seed, Bounds::new(4, 4, 10)).unwrap();
        for side in [Color::Emerald, Color::Violet] {
            let order = random_class_order(&mut rng, &g, side);
            let (i, x) = oracle_polynomials(&g, side, &order);
            assert_eq!(interior_polynomial(&g, side, Some(&order)).coeffs(), &i[..], "seed {seed}");
            assert_eq!(exterior_polynomial(&g, side, Some(&order)).coeffs(), &x[..], "seed {seed}");
        }
    }
}

#[test]
fn interior_polynomial_properties() {
    for seed in 0..60 {
        let g = random::random_instance(seed, Bounds::new(5, 4, 11)).unwrap();
        let ie = interior_polynomial(&g, Color::Emerald, None);
        let iv = interior_polynomial(&g, Color::Violet, None);
        assert_eq!(ie, iv, "seed {seed}");
        assert_eq!(ie.coeff(0), 1);
        assert_eq!(ie.eval_at_one() as usize, enumerate_hypertrees(&g, Color::Emerald).len());
        let bound = g.class_size(Color::Emerald).min(g.class_size(Color::Violet)) - 1;
        assert!(ie.degree().unwrap() <= bound);
    }
}

/// Integer points of the convex hull of the hypertrees, by exact LP feasibility over all
/// integer vectors in the bounding box.
#[test]
fn hypertrees_are_the_lattice_points_of_their_hull() {
    for seed in 0..12 {
        let g = random::random_instance(seed, Bounds::new(3, 4, 8)).unwrap();
        let hs = enumerate_hypertrees(&g, Color::Emerald);
        let set: BTreeSet<Vec<u32>> = hs.iter().map(|f| f.values.clone()).collect();
        let class = g.class(Color::Emerald);
        let caps: Vec<u32> = class.iter().map(|x| g.degree(*x) as u32 - 1).collect();
        let total = g.class_size(Color::Violet) as u32 - 1;
        let mut point = vec![0u32; caps.len()];
        loop {
            if point.iter().sum::<u32>() == total {
                // Find convex weights: rows are coordinates plus the sum of weights.
                let mut a: Vec<Vec<Q>> = (0..caps.len()).map(|i| hs.iter().map(|f| q(f.values[i] as i64)).collect()).collect();
                a.push(hs.iter().map(|_| q(1)).collect());
                let mut b: Vec<Q> = point.iter().map(|v| q(*v as i64)).collect();
                b.push(q(1));
                let c = vec![q(0); hs.len()];
                let in_hull = matches!(maximize(&c, &a, &b), LpOutcome::Optimal { .. });
                assert_eq!(in_hull, set.contains(&point), "seed {seed} point {point:?}");
            }
            let mut i = 0;
            while i < point.len() && point[i] == caps[i] {
                point[i] = 0;
                i += 1;
            }
            if i == point.len() {
                break;
            }
            point[i] += 1;
        }
    }
}

#[test]
fn tutte_identity_and_break_divisors() {
    for seed in 0..60 {
        let g = random::random_ordinary(seed, 6, 9).unwrap();
        assert!(tutte_check(&g).holds, "seed {seed}");
        let bd = break_divisors(&g);
        assert_eq!(BigInt::from(bd.len()), kirchhoff_count(&g), "seed {seed}");
        let genus = g.edge_count() as i64 - g.node_count() as i64 + 1;
        assert!(bd.iter().all(|z| z.iter().sum::<i64>() == genus));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn order_independence(seed in 0u64..10_000, order_seed in 0u64..1000) {
        let g = random::random_instance(seed, Bounds::new(4, 5, 11)).unwrap();
        let mut rng = random::rng(order_seed);
        for side in [Color::Emerald, Color::Violet] {
            let order = random_class_order(&mut rng, &g, side);
            prop_assert_eq!(interior_polynomial(&g, side, Some(&order)), interior_polynomial(&g, side, None));
            prop_assert_eq!(exterior_polynomial(&g, side, Some(&order)), exterior_polynomial(&g, side, None));
        }
    }
}
