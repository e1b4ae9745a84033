use std::collections::BTreeSet;

use hyperbernardi::bernardi::*;
use hyperbernardi::graph::{Color, RibbonBipartiteGraph};
use hyperbernardi::harness::fixtures;
use hyperbernardi::harness::random::{self, random_setup, Bounds};
use hyperbernardi::hypertree::*;
use hyperbernardi::jaeger::jaeger_trees;
use hyperbernardi::Error;
use proptest::prelude::*;

fn names(g: &RibbonBipartiteGraph, es: &[hyperbernardi::EdgeId]) -> Vec<String> {
    es.iter().map(|e| g.edge_name(*e).to_string()).collect()
}

#[test]
fn worked_run_on_the_colour_swapped_example() {
    let g = fixtures::fix_b();
    let f = Hypertree::parse(&g, "left=1,top=0,right=2").unwrap();
    let r = run(&g, &f, ProcessVariant::HTE_CUTE).unwrap();
    let got: Vec<(String, Decision, Option<String>)> = r
        .steps
        .iter()
        .map(|s| (g.edge_name(s.current).to_string(), s.decision, s.forced.map(|e| g.edge_name(e).to_string())))
        .collect();
    use Decision::*;
    let want = [
        ("leftupper_left", Keep, Some("topupper_left")),
        ("topupper_right", Remove, None),
        ("topcenter", Remove, None),
        ("topupper_left", Keep, Some("leftupper_left")),
        ("leftcenter", Remove, None),
        ("leftbottom", Keep, Some("rightbottom")),
        ("rightcenter", Keep, Some("rightcenter")),
        ("rightupper_right", Keep, Some("rightupper_right")),
        ("rightbottom", Keep, Some("leftbottom")),
    ];
    assert_eq!(got.len(), want.len());
    for (a, b) in got.iter().zip(want) {
        assert_eq!((a.0.as_str(), a.1, a.2.as_deref()), b);
    }
    assert_eq!(degree_vector(&g, r.tree, Color::Emerald), f);
    let order: Vec<&str> = r.class_order(&g, Color::Emerald).iter().map(|x| g.node_name(*x)).collect();
    assert_eq!(order, ["left", "top", "right"]);
    let set = HypertreeSet::new(&g, Color::Emerald);
    let a = embedding_activities(&g, &set, &f, ProcessVariant::HTE_CUTE).unwrap();
    assert_eq!((a.internal_inactive, a.external_inactive), (1, 1));

    let rv = run(&g, &f, ProcessVariant::HTE_CUTV).unwrap();
    assert_eq!(names(&g, &rv.current_order()[..2]), ["topupper_left", "leftupper_left"]);
    assert_eq!(degree_vector(&g, rv.tree, Color::Emerald), f);
    assert_eq!(rv.steps.len(), g.edge_count());
}

#[test]
fn four_cycle_runs() {
    let g = fixtures::c4();
    for variant in ProcessVariant::ALL {
        let mut trees = BTreeSet::new();
        for f in enumerate_hypertrees(&g, variant.hypertree_side) {
            let r = run(&g, &f, variant).unwrap();
            assert!(g.is_spanning_tree(r.tree));
            assert_eq!(degree_vector(&g, r.tree, f.side), f);
            trees.insert(r.tree);
        }
        assert_eq!(trees.len(), 2);
    }
    assert_eq!(bernardi_interior(&g, Color::Emerald).unwrap().coeffs(), &[1, 1]);
}

#[test]
fn rejects_bad_input() {
    let g = fixtures::c4();
    let bad = Hypertree::parse(&g, "e1=1,e2=1").unwrap();
    assert!(matches!(run(&g, &bad, ProcessVariant::HTE_CUTE), Err(Error::NotHypertree(_))));
    let f = Hypertree::parse(&g, "e1=1,e2=0").unwrap();
    assert!(run(&g, &f, ProcessVariant::HTV_CUTV).is_err());
    assert!("htX-cutV".parse::<ProcessVariant>().is_err());
    assert_eq!("hte-cutv".parse::<ProcessVariant>().unwrap(), ProcessVariant::HTE_CUTV);
}

fn check_instance(g: &RibbonBipartiteGraph) {
    for variant in ProcessVariant::ALL {
        let hs = enumerate_hypertrees(g, variant.hypertree_side);
        let mut outcomes = BTreeSet::new();
        for f in &hs {
            let r = run(g, f, variant).unwrap();
            let cur = r.current_order();
            let distinct: BTreeSet<_> = cur.iter().collect();
            assert_eq!((cur.len(), distinct.len()), (g.edge_count(), g.edge_count()));
            assert_eq!(degree_vector(g, r.tree, f.side), *f);
            assert_eq!(cur, tour_listing(g, r.tree, variant.cut_side));
            outcomes.insert(r.tree);
        }
        assert_eq!(outcomes.len(), hs.len(), "{variant}");
        let jaeger: BTreeSet<_> = jaeger_trees(g, variant.cut_side).into_iter().collect();
        assert_eq!(outcomes, jaeger, "{variant}");
    }
    for side in [Color::Emerald, Color::Violet] {
        assert_eq!(bernardi_interior(g, side).unwrap(), interior_polynomial(g, side, None));
    }
    for f in enumerate_hypertrees(g, Color::Emerald) {
        assert!(check_composition(g, &f).unwrap().ok());
    }
}

#[test]
fn running_example_under_random_setups() {
    let base = fixtures::fix_a();
    let mut rng = random::rng(3);
    for _ in 0..25 {
        check_instance(&random_setup(&mut rng, &base));
    }
}

#[test]
fn random_instances() {
    for seed in 0..40 {
        check_instance(&random::random_instance(seed, Bounds::new(4, 5, 11)).unwrap());
    }
}

#[test]
fn graph_interior_identity_with_violet_cut() {
    for seed in 0..30 {
        let g = random::random_ordinary(seed, 5, 7).unwrap().subdivision();
        let r = check_conjectures(&g, Color::Emerald).unwrap();
        assert!(r.interior_holds(), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn outcome_realizes_input(seed in 0u64..100_000, pick in 0usize..1000, v in 0usize..4) {
        let g = random::random_instance(seed, Bounds::new(5, 5, 13)).unwrap();
        let variant = ProcessVariant::ALL[v];
        let hs = enumerate_hypertrees(&g, variant.hypertree_side);
        let f = &hs[pick % hs.len()];
        let r = run(&g, f, variant).unwrap();
        prop_assert!(g.is_spanning_tree(r.tree));
        prop_assert_eq!(&degree_vector(&g, r.tree, f.side), f);
        prop_assert_eq!(r.steps.len(), g.edge_count());
    }
}
