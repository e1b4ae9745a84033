use std::collections::BTreeSet;

use hyperbernardi::graph::{Color, EdgeId, RibbonBipartiteGraph};
use hyperbernardi::harness::fixtures;
use hyperbernardi::harness::random::{self, random_setup, Bounds};
use hyperbernardi::hypertree::{degree_vector, HypertreeSet};
use hyperbernardi::jaeger::*;
use hyperbernardi::tour::spanning_trees;
use hyperbernardi::EdgeSet;

fn names(g: &RibbonBipartiteGraph, es: &[EdgeId]) -> Vec<String> {
    es.iter().map(|e| g.edge_name(*e).to_string()).collect()
}

fn sorted(mut v: Vec<EdgeSet>) -> Vec<EdgeSet> {
    v.sort();
    v
}

/// Jaeger trees by filtering all spanning trees.
fn oracle(g: &RibbonBipartiteGraph, cut: Color) -> Vec<EdgeSet> {
    sorted(spanning_trees(g).into_iter().filter(|t| is_jaeger(g, *t, cut)).collect())
}

#[test]
fn shelling_setup_lists_seven_trees_in_tree_order() {
    let g = fixtures::fix_a_shelling();
    let listed = fixtures::fix_a_shelling_trees(&g);
    assert_eq!(listed.len(), 7);
    assert_eq!(jaeger_trees(&g, Color::Violet), listed);
    assert_eq!(sorted(recognized_jaeger_trees(&g, Color::Violet)), sorted(listed.clone()));
    for w in listed.windows(2) {
        assert_eq!(compare_trees(&g, w[0], w[1]), std::cmp::Ordering::Less);
    }
}

#[test]
fn t_orders_of_the_semi_passivity_example() {
    let g = fixtures::fix_a();
    let (t, labelled) = fixtures::fig5(&g);
    assert!(is_jaeger(&g, t, Color::Emerald));
    let gr = g.reversed_setup();
    assert!(is_jaeger(&gr, t, Color::Violet));
    assert_eq!(
        names(&gr, &violet_order(&gr, t)),
        ["e2v0", "e3v0", "e2v2", "e1v2", "e0v1", "e3v1", "e1v1", "e3v2", "e0v0"]
    );
    let em = emerald_order(&gr, t);
    assert_eq!(em, labelled);
    let class = |c| induced_class_order(&gr, &em, c).iter().map(|x| gr.node_name(*x).to_string()).collect::<Vec<_>>();
    assert_eq!(class(Color::Emerald), ["e0", "e3", "e1", "e2"]);
    let sp = semi_passive(&gr, t, &em);
    assert_eq!(sp, fixtures::edge_set(&g, &["e1v2", "e3v0"]));
}

#[test]
fn matching_example() {
    let g = fixtures::fig10();
    let t = fixtures::fig10_tree(&g);
    assert!(is_jaeger(&g, t, Color::Violet));
    let order = violet_order(&g, t);
    assert_eq!(order, fixtures::fig10_labelled_order(&g));
    assert_eq!(semi_passive(&g, t, &order), fixtures::edge_set(&g, &["n5n7", "n3n9"]));
    let he = HypertreeSet::new(&g, Color::Emerald);
    let hv = HypertreeSet::new(&g, Color::Violet);
    assert!(matching_holds(&g, t, &he, &hv));
}

#[test]
fn enumeration_agrees_with_filter() {
    let mut rng = random::rng(17);
    let mut graphs: Vec<RibbonBipartiteGraph> = (0..40).map(|s| random::random_instance(s, Bounds::new(4, 5, 11)).unwrap()).collect();
    graphs.extend((0..10).map(|_| random_setup(&mut rng, &fixtures::fix_a())));
    for g in &graphs {
        for cut in [Color::Emerald, Color::Violet] {
            let direct = jaeger_trees(g, cut);
            assert_eq!(sorted(direct.clone()), oracle(g, cut));
            assert_eq!(sorted(recognized_jaeger_trees(g, cut)), oracle(g, cut));
            assert!(direct.windows(2).all(|w| compare_trees(g, w[0], w[1]).is_lt()));
            assert_eq!(direct.len(), HypertreeSet::new(g, Color::Emerald).len());
        }
    }
}

#[test]
fn reversal_and_transpose() {
    for seed in 0..40 {
        let g = random::random_instance(seed, Bounds::new(4, 4, 10)).unwrap();
        let e = oracle(&g, Color::Emerald);
        assert_eq!(e, oracle(&g.reversed_setup(), Color::Violet), "seed {seed}");
        assert_eq!(e, oracle(&g.transpose(), Color::Violet), "seed {seed}");
    }
}

#[test]
fn each_hypertree_has_one_jaeger_realization() {
    for seed in 0..40 {
        let g = random::random_instance(seed, Bounds::new(5, 4, 11)).unwrap();
        for cut in [Color::Emerald, Color::Violet] {
            let trees = jaeger_trees(&g, cut);
            for side in [Color::Emerald, Color::Violet] {
                let hs: BTreeSet<_> = trees.iter().map(|t| degree_vector(&g, *t, side)).collect();
                assert_eq!(hs.len(), trees.len(), "seed {seed}");
            }
        }
    }
}

#[test]
fn five_descriptions_agree() {
    let mut graphs: Vec<RibbonBipartiteGraph> = (0..30).map(|s| random::random_instance(s, Bounds::new(4, 4, 10)).unwrap()).collect();
    graphs.push(fixtures::fix_a_shelling());
    for g in &graphs {
        let he = HypertreeSet::new(g, Color::Emerald);
        let trees = jaeger_trees(g, Color::Violet);
        for (i, t) in trees.iter().enumerate() {
            for e in t.iter() {
                let c = characterize_edge(g, *t, e, &trees[..i], &he);
                assert!(c.agree(), "{c:?}");
            }
        }
    }
}

#[test]
fn drawn_k5_trees_are_jaeger() {
    let g = fixtures::k5();
    let (a, b) = fixtures::k5_trees(&g);
    assert!(is_jaeger(&g, a, Color::Violet));
    assert!(is_jaeger(&g, b, Color::Violet));
}

#[test]
fn four_cycle_jaeger_trees() {
    let g = fixtures::c4();
    let a = fixtures::edge_set(&g, &["c1", "c2", "c4"]);
    let b = fixtures::edge_set(&g, &["c1", "c2", "c3"]);
    assert!(is_jaeger(&g, a, Color::Violet));
    assert!(!is_jaeger(&g, b, Color::Violet));
    assert!(is_jaeger(&g, b, Color::Emerald));
}
