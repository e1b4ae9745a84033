use num_bigint::BigInt;
use hyperbernardi::oracle::kirchhoff_count;
use hyperbernardi::edgeset::EdgeSet;
use hyperbernardi::graph::{Color, EdgeId, RibbonGraph};
use hyperbernardi::harness::fixtures::{self, edge_set};
use hyperbernardi::tour::{fundamental_cut, fundamental_cycle, spanning_trees, tour, tour_edge_order};

fn names(g: &RibbonGraph, es: &[EdgeId]) -> Vec<String> {
    es.iter().map(|e| g.edge_name(*e).to_string()).collect()
}

#[test]
fn ordinary_tour_matches_drawing() {
    let g = fixtures::fig2();
    let t = fixtures::fig2_tree(&g);
    let steps: Vec<String> = tour(&g, t)
        .iter()
        .map(|s| format!("{}{}", g.node_name(s.node), g.edge_name(s.edge)))
        .collect();
    assert_eq!(steps, ["v1e1", "v2e2", "v2e5", "v4e3", "v3e2", "v3e3", "v4e4", "v4e5", "v2e1", "v1e4"]);
    assert_eq!(names(&g, &tour_edge_order(&g, t)), ["e1", "e2", "e5", "e3", "e4"]);
}

#[test]
fn four_cycle_tour() {
    let g = fixtures::c4();
    let t = edge_set(&g, &["c2", "c3", "c4"]);
    let steps: Vec<(String, bool)> = tour(&g, t)
        .iter()
        .map(|s| (format!("{}{}", g.node_name(s.node), g.edge_name(s.edge)), s.traversed))
        .collect();
    let expect = [
        ("v1c1", false),
        ("v1c2", true),
        ("e2c3", true),
        ("v2c4", true),
        ("e1c1", false),
        ("e1c4", true),
        ("v2c3", true),
        ("e2c2", true),
    ];
    assert_eq!(steps, expect.map(|(a, b)| (a.to_string(), b)));
    assert_eq!(names(&g, &tour_edge_order(&g, t)), ["c1", "c2", "c3", "c4"]);
}

#[test]
fn tour_length_is_twice_edge_count() {
    for fx in fixtures::all() {
        let g = &fx.graph;
        for t in spanning_trees(g).into_iter().take(50) {
            assert_eq!(tour(g, t).len(), 2 * g.edge_count(), "{}", fx.name);
        }
    }
}

#[test]
fn fundamental_cut_and_cycle() {
    let g = fixtures::c4();
    let t = edge_set(&g, &["c1", "c2", "c4"]);
    let c2 = g.edge_by_name("c2").unwrap();
    assert_eq!(fundamental_cut(&g, t, c2), edge_set(&g, &["c2", "c3"]));
    let c3 = g.edge_by_name("c3").unwrap();
    assert_eq!(fundamental_cycle(&g, t, c3), g.all_edges());
}

#[test]
fn spanning_tree_counts() {
    assert_eq!(spanning_trees(&fixtures::c4()).len(), 4);
    assert_eq!(spanning_trees(&fixtures::single_edge()).len(), 1);
    for fx in fixtures::all() {
        assert_eq!(BigInt::from(spanning_trees(&fx.graph).len()), kirchhoff_count(&fx.graph), "{}", fx.name);
    }
}

#[test]
fn transpose_and_reversal() {
    let g = fixtures::fix_a();
    let t = g.transpose();
    assert_eq!(t.class(Color::Emerald), g.class(Color::Violet));
    assert_eq!(t.transpose(), g);
    let c = fixtures::c4();
    let r = c.reversed_setup();
    assert_eq!(r.edge_name(r.base_edge()), "c2");
    assert_eq!(r.reversed_setup(), c);
    assert_eq!(g.reversed_setup().reversed_setup(), g);
}

#[test]
fn faces_and_genus() {
    assert_eq!(fixtures::c4().faces().len(), 2);
    assert_eq!(fixtures::fix_a().faces().len(), 4);
    assert_eq!(fixtures::fix_a().genus(), 0);
    assert_eq!(fixtures::fig2().genus(), 0);
    assert_eq!(fixtures::fig10().genus(), 0);
}

#[test]
fn subdivision_round_trip() {
    let g = fixtures::fig2();
    let b = g.subdivision();
    assert!(b.is_subdivision());
    assert_eq!(b.node_count(), 9);
    assert_eq!(b.edge_count(), 10);
    let back = b.unsubdivide().unwrap();
    assert_eq!(back.edge_count(), 5);
    assert_eq!(back.genus(), 0);
    let h = fixtures::fig10();
    assert!(h.is_subdivision());
    let _ = EdgeSet::EMPTY;
}
