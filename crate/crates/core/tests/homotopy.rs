mod common;

use common::{all_graphs, MoveOracle, Tiny};
use digitopo::generators::octahedron;
use digitopo::graph::{complete, cone, cycle};
use digitopo::homotopy::{apply_move, is_contractible, reduce, validate_move, Move};
use digitopo::invariants::invariants;
use digitopo::{Budget, Graph, Outcome, Verdict};

fn budget() -> Budget {
    Budget::new(200)
}

fn del(v: &str) -> Move {
    Move::DeletePoint { vertex: v.into() }
}

#[test]
fn validate_move_examples() {
    let b = budget();
    let k3 = complete(3);
    assert!(validate_move(&k3, &del("k1"), &b).unwrap().is_yes());
    let c4 = cycle(4);
    let v = validate_move(&c4, &del("c0"), &b).unwrap();
    assert!(v.is_no());
    let glue = Move::GlueEdge { u: "c0".into(), v: "c2".into() };
    assert!(validate_move(&c4, &glue, &b).unwrap().is_no());
}

#[test]
fn malformed_moves_are_errors() {
    let b = budget();
    let c4 = cycle(4);
    assert!(validate_move(&c4, &del("zz"), &b).is_err());
    let glue = Move::GluePoint { vertex: "c0".into(), attachment: vec!["c1".into()] };
    assert!(validate_move(&c4, &glue, &b).is_err());
    let edge = Move::DeleteEdge { u: "c0".into(), v: "c2".into() };
    assert!(validate_move(&c4, &edge, &b).is_err());
}

#[test]
fn apply_move_changes_counts_by_one() {
    let b = budget();
    let k3 = complete(3);
    let g = apply_move(&k3, &del("k1"), &b).unwrap();
    assert_eq!((g.n(), g.m()), (2, 1));
    let g = apply_move(&k3, &Move::GluePoint { vertex: "x".into(), attachment: vec!["k0".into()] }, &b).unwrap();
    assert_eq!((g.n(), g.m()), (4, 4));
    let g = apply_move(&k3, &Move::DeleteEdge { u: "k0".into(), v: "k1".into() }, &b).unwrap();
    assert_eq!((g.n(), g.m()), (3, 2));
    assert!(apply_move(&cycle(4), &del("c0"), &b).is_err());
}

#[test]
fn contractible_examples() {
    let b = budget();
    let k1 = Graph::from_edges::<&str>("K1", &["v"], &[]).unwrap();
    assert!(is_contractible(&k1, &b).is_yes());
    for g in [cycle(4), cycle(7), octahedron(), complete(3)] {
        let c = cone("apex", &g);
        let t = is_contractible(&c, &b);
        let tr = t.witness().expect("cone is contractible");
        assert_eq!(tr.replay(&c, &b).unwrap().n(), 1);
    }
    match is_contractible(&cycle(4), &b) {
        Verdict::No(cert) => assert_eq!(cert.chi, Some(0)),
        other => panic!("C4: {:?}", other.outcome()),
    }
}

#[test]
fn large_cones_are_contractible() {
    let b = budget();
    for g in [complete(70), cone("apex", &cycle(80))] {
        let tr = is_contractible(&g, &b).witness().cloned().expect("cones are contractible");
        assert_eq!(tr.replay(&g, &b).unwrap().n(), 1);
    }
    let big = cycle(70);
    assert_ne!(is_contractible(&big, &b).outcome(), Outcome::Yes);
}

#[test]
fn empty_graph_is_not_contractible() {
    assert!(is_contractible(&Graph::empty("e"), &budget()).is_no());
}

#[test]
fn reduce_examples() {
    let b = budget();
    let (g, tr) = reduce(&cone("v", &cycle(8)), &b);
    assert_eq!(g.n(), 1);
    assert_eq!(tr.replay(&cone("v", &cycle(8)), &b).unwrap(), g);
    let (g, tr) = reduce(&cycle(5), &b);
    assert_eq!(g, cycle(5));
    assert!(tr.is_empty());
    let oct = octahedron();
    let (g, _) = reduce(&oct.without_vertex(0), &b);
    assert_eq!(g.n(), 1);
}

#[test]
fn contractibility_matches_move_search_up_to_five_points() {
    let mut oracle = MoveOracle::new(8);
    let b = budget();
    let mut checked = 0;
    for level in all_graphs(5) {
        for g in level.into_iter().filter(Graph::is_connected) {
            let expect = oracle.contractible(&Tiny::from_graph(&g));
            let got = is_contractible(&g, &b).outcome();
            let want = if expect { Outcome::Yes } else { Outcome::No };
            assert_eq!(got, want, "{:?}", g.edge_names());
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 1 + 2 + 6 + 21);
}

#[test]
fn oracle_grounding() {
    let mut o = MoveOracle::new(8);
    assert!(o.contractible(&Tiny::from_graph(&complete(4))));
    assert!(!o.contractible(&Tiny::from_graph(&cycle(4))));
    assert!(!o.contractible(&Tiny::from_graph(&cycle(5))));
    assert!(!o.contractible(&Tiny::from_graph(&Graph::from_index_edges("S0", 2, &[]).unwrap())));
}

#[test]
fn validated_moves_keep_invariants() {
    let b = budget();
    let g = cone("v", &cycle(5));
    let before = invariants(&g);
    for v in g.names() {
        let m = del(v);
        if validate_move(&g, &m, &b).unwrap().is_yes() {
            let h = apply_move(&g, &m, &b).unwrap();
            let after = invariants(&h);
            assert_eq!((before.chi, &before.betti), (after.chi, &after.betti));
        }
    }
}
