mod common;

use std::collections::BTreeSet;

use npsim::fixtures::m_bounce;
use npsim::graph::reference::{
    ceiling_adjacent_by_definition, is_ex_pendant_by_scan, is_folding_by_scan, precedents_by_scan,
    succedents_by_scan,
};
use npsim::graph::{
    ceiling_adjacent_edges, get_precedents, get_succedents, is_ex_pendant, is_index_adjacent,
    parse_edge_list, to_dot, to_edge_list, CompGraph, CompNode, Edge, GraphError, Naming, Walk,
    WalkError,
};
use npsim::tm::{simulate_dtm, MachineSpec};
use proptest::prelude::*;

use common::{footmarks, random_subgraph, rng, small_bounds};

/// The bounce walk on `aa`: `e0 = (0,0,q0,a) -> (1,0,q1,a)`,
/// `e1 = (1,0,q1,a) -> (0,1,q2,x)`, `e2 = (0,1,q2,x) -> (1,1,qacc,y)`.
fn bounce() -> (MachineSpec, Naming, [Edge; 3]) {
    let spec = m_bounce();
    let naming = Naming::from_spec(&spec);
    let w = simulate_dtm(&spec, &spec.parse_word("aa").unwrap(), 100).unwrap().walk;
    let e = |t: &str| naming.parse_edge(t).unwrap();
    let edges = [
        e("(0,0,q0,a,⊥,⊥) -> (1,0,q1,a,⊥,⊥)"),
        e("(1,0,q1,a,⊥,⊥) -> (0,1,q2,x,q0,a)"),
        e("(0,1,q2,x,q0,a) -> (1,1,qacc,y,q1,a)"),
    ];
    assert_eq!(w.edges, edges);
    (spec, naming, edges)
}

fn node(naming: &Naming, t: &str) -> CompNode {
    naming.parse_node(t).unwrap()
}

#[test]
fn node_creation_is_idempotent() {
    let (_, naming, _) = bounce();
    let mut g = CompGraph::new();
    let v = node(&naming, "(0,0,q0,a,⊥,⊥)");
    assert_eq!(g.get_or_create_node(v).unwrap(), v);
    assert_eq!(g.get_or_create_node(v).unwrap(), v);
    assert_eq!(g.node_count(), 1);
}

#[test]
fn derived_fields_follow_the_transition_function() {
    let (spec, naming, _) = bounce();
    let v = node(&naming, "(0,1,q2,x,q0,a)");
    let d = v.derived(&spec).unwrap();
    assert_eq!(d.next_index, 1);
    assert_eq!(d.next_state, spec.accept());
    assert_eq!(d.output, spec.symbol_id("x").unwrap());
    assert!(node(&naming, "(1,1,qacc,y,q1,a)").derived(&spec).is_none());
}

#[test]
fn tier_zero_with_history_is_rejected() {
    let (spec, _, _) = bounce();
    let q0 = spec.initial();
    let a = spec.symbol_id("a").unwrap();
    assert_eq!(
        CompNode::new(0, 0, q0, a, Some((q0, a))),
        Err(GraphError::TierMismatch { tier: 0 })
    );
    assert!(CompNode::new(0, 1, q0, a, None).is_err());
    let mut g = CompGraph::new();
    let bad = CompNode {
        last: Some((q0, a)),
        ..CompNode::floor(0, q0, a)
    };
    assert!(g.get_or_create_node(bad).is_err());
}

#[test]
fn bounce_walk_sizes() {
    let (_, _, es) = bounce();
    let mut g = CompGraph::new();
    for e in es {
        assert_eq!(g.add_edge(e.init, e.term), Ok(true));
    }
    assert_eq!((g.width(), g.height(), g.edge_count()), (2, 1, 3));
    assert!(g.edge_count() <= g.width() * g.layer_height().pow(2));
    assert_eq!(g.add_edge(es[0].init, es[0].term), Ok(false));
}

#[test]
fn remove_is_the_inverse_of_add() {
    let (_, _, es) = bounce();
    let original = CompGraph::from_edges(&es[..2]);
    let mut g = original.clone();
    g.add_edge(es[2].init, es[2].term).unwrap();
    assert!(g.remove_edge(&es[2]));
    assert!(!g.remove_edge(&es[2]));
    assert!(g.remove_isolated_node(&es[2].term));
    assert_eq!(g, original);
    let full = CompGraph::from_edges(&es);
    let mut g = full.clone();
    assert!(g.remove_edge(&es[1]));
    g.add_edge(es[1].init, es[1].term).unwrap();
    assert_eq!(g, full);
}

#[test]
fn non_neighbour_edges_are_rejected() {
    let (spec, _, _) = bounce();
    let a = spec.symbol_id("a").unwrap();
    let u = CompNode::floor(0, spec.initial(), a);
    let v = CompNode::floor(2, spec.initial(), a);
    assert!(matches!(Edge::new(u, v), Err(GraphError::NotNeighbours { .. })));
    assert!(CompGraph::new().add_edge(u, v).is_err());
}

#[test]
fn outgoing_edges_share_a_direction() {
    let (spec, _, _) = bounce();
    let a = spec.symbol_id("a").unwrap();
    let u = CompNode::floor(0, spec.initial(), a);
    let mut g = CompGraph::new();
    g.add_edge(u, CompNode::floor(1, spec.initial(), a)).unwrap();
    assert_eq!(
        g.add_edge(u, CompNode::floor(-1, spec.initial(), a)),
        Err(GraphError::DirectionClash)
    );
}

#[test]
fn precedent_case_of_a_node() {
    let (spec, naming, _) = bounce();
    let mut g = CompGraph::new();
    let v = node(&naming, "(0,1,q2,x,q0,a)");
    let k = g.precedent_of_node(&v).unwrap();
    assert_eq!((k.index, k.tier), (0, 0));
    assert_eq!((k.state, k.symbol), (spec.initial(), spec.symbol_id("a").unwrap()));
    assert_eq!(g.precedent_of_node(&v), Some(k));
    assert_eq!(g.case_members(k).count(), 0);
    assert_eq!(g.precedent_of_node(&node(&naming, "(0,0,q0,a,⊥,⊥)")), None);
}

#[test]
fn precedents_and_succedents_on_the_bounce_walk() {
    let (_, _, es) = bounce();
    let g = CompGraph::from_edges(&es);
    assert_eq!(get_precedents(&g, &es[1]), vec![es[0]]);
    assert!(get_precedents(&g, &es[0]).is_empty());
    assert_eq!(get_succedents(&g, &es[0]), vec![es[1]]);
    assert!(get_succedents(&g, &es[2]).is_empty());
}

#[test]
fn folding_nodes_on_the_bounce_walk() {
    let (spec, naming, es) = bounce();
    let g = CompGraph::from_edges(&es);
    assert!(g.is_folding(&node(&naming, "(1,0,q1,a,⊥,⊥)")));
    assert!(!g.is_folding(&node(&naming, "(0,0,q0,a,⊥,⊥)")));
    let lone = CompNode::floor(5, spec.initial(), spec.blank());
    let mut g2 = g.clone();
    g2.get_or_create_node(lone).unwrap();
    assert!(!g2.is_folding(&lone));
}

#[test]
fn ceiling_adjacency_on_the_bounce_walk() {
    let (_, _, es) = bounce();
    let g = CompGraph::from_edges(&es);
    // The precedent chain of the final edge runs e2, e1, e0, but every edge it
    // touches ends at a folding node, so nothing qualifies.
    let c = ceiling_adjacent_edges(&g, &es[2]);
    assert!(c.is_empty());
    assert_eq!(c, ceiling_adjacent_by_definition(&g, &es[2]));
    // e1 starts at a folding node and e2 touches it, ending off the fold.
    assert_eq!(ceiling_adjacent_edges(&g, &es[1]), BTreeSet::from([es[2]]));
    let lone = CompGraph::from_edges(&es[..1]);
    assert!(ceiling_adjacent_edges(&lone, &es[0]).is_empty());
}

#[test]
fn index_adjacency_conditions() {
    let (spec, naming, es) = bounce();
    let g = CompGraph::from_edges(&es);
    let none = BTreeSet::new();
    let no_nodes = BTreeSet::new();
    assert_eq!(is_index_adjacent(&es[1], &es[..1], 0, &g, &none, &no_nodes), Ok(true));
    let a = spec.symbol_id("a").unwrap();
    let far = Edge::new(
        CompNode::floor(4, spec.initial(), a),
        CompNode::floor(5, spec.initial(), a),
    )
    .unwrap();
    let gf = CompGraph::from_edges(&[es[0], far]);
    assert_eq!(is_index_adjacent(&far, &es[..1], 0, &gf, &none, &no_nodes), Ok(false));
    let near_final = Edge::new(
        CompNode::floor(2, spec.initial(), a),
        node(&naming, "(1,1,qacc,y,q1,a)"),
    )
    .unwrap();
    let finals = BTreeSet::from([near_final]);
    let gn = CompGraph::from_edges(&[es[0], near_final]);
    assert_eq!(is_index_adjacent(&near_final, &[], 0, &gn, &finals, &no_nodes), Ok(true));
    assert_eq!(is_index_adjacent(&near_final, &[], 0, &gn, &none, &no_nodes), Ok(false));
    assert!(matches!(
        is_index_adjacent(&far, &[es[0], far], 0, &gf, &none, &no_nodes),
        Err(GraphError::MixedIndex { .. })
    ));
}

#[test]
fn walk_invariants_are_checked() {
    let (_, _, es) = bounce();
    assert!(Walk::from_edges(es.to_vec()).is_ok());
    assert_eq!(Walk::from_edges(vec![es[0], es[2]]), Err(WalkError::Broken(1)));
    assert_eq!(Walk::from_edges(vec![es[1]]), Err(WalkError::Surface(0)));
    let w = Walk::from_edges(es.to_vec()).unwrap();
    assert_eq!(w.ceiling_edges(), BTreeSet::from([es[2]]));
    assert_eq!(w.floor_edges(), BTreeSet::from([es[0]]));
}

#[test]
fn edge_list_round_trip_and_dot() {
    let (spec, naming, es) = bounce();
    let g = CompGraph::from_edges(&es);
    let text = to_edge_list(&g, &naming);
    let (back, naming2) = parse_edge_list(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(naming2, naming);
    assert_eq!(to_edge_list(&back, &naming2), text);
    let dot = to_dot(&g, &Naming::from_spec(&spec), &BTreeSet::from([es[2]]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 3);
    assert_eq!(dot.matches("style=bold").count(), 1);
    assert!(dot.contains("0/1 q2,x [q0,a]"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn primitives_match_definitional_scans(seed in 0u64..5000, sub in any::<u64>()) {
        let f = footmarks(seed, &small_bounds());
        prop_assume!(f.as_ref().is_some_and(|f| f.graph.edge_count() <= 200));
        let f = f.unwrap();
        let (g, _) = random_subgraph(&f, &mut rng(sub));
        for e in g.edges() {
            let prec: BTreeSet<Edge> = get_precedents(&g, e).into_iter().collect();
            prop_assert_eq!(&prec, &precedents_by_scan(&g, e));
            let succ: BTreeSet<Edge> = get_succedents(&g, e).into_iter().collect();
            prop_assert_eq!(&succ, &succedents_by_scan(&g, e));
            for p in &prec {
                prop_assert!(get_succedents(&g, p).contains(e));
            }
            prop_assert_eq!(is_ex_pendant(&g, e), is_ex_pendant_by_scan(&g, e));
            prop_assert_eq!(ceiling_adjacent_edges(&g, e), ceiling_adjacent_by_definition(&g, e));
        }
        for v in g.nodes() {
            prop_assert_eq!(g.is_folding(&v), is_folding_by_scan(&g, &v));
        }
    }

    #[test]
    fn structural_laws_hold_on_footmarks(seed in 0u64..5000) {
        let f = footmarks(seed, &small_bounds());
        prop_assume!(f.is_some());
        let g = f.unwrap().graph;
        prop_assert!(g.edge_count() <= g.width() * g.layer_height().pow(2));
        for v in g.nodes() {
            if g.is_folding(&v) {
                let idx: BTreeSet<i32> = g.incident_edges(&v).iter().map(Edge::index).collect();
                prop_assert_eq!(idx.len(), 1);
            }
            let l = g.edge_lists(&v).unwrap();
            prop_assert!(l.left_outgoing.is_empty() || l.right_outgoing.is_empty());
        }
        for v in g.nodes() {
            let Some(k) = v.precedent_case() else { continue };
            let dirs: BTreeSet<i32> = g
                .case_members(k)
                .flat_map(|p| g.out_edges(&p))
                .map(|e| e.dir())
                .collect();
            prop_assert!(dirs.len() <= 1);
        }
    }
}
