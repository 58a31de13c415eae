mod common;

use std::collections::BTreeSet;

use npsim::exp::{footmarks_bounds, simulate_all_certificates_exp, BoundsReport, ExpConfig, ExpError};
use npsim::fixtures::{m_eq, m_eq_never, CORPUS};
use npsim::graph::{CompGraph, Edge};
use npsim::harness::random_case;
use npsim::tm::{
    enumerate_certificates_direct, for_each_certificate, parse_machine_spec, simulate_tape, MachineSpec,
    SymbolId,
};
use npsim::Outcome;
use proptest::prelude::*;

use common::small_bounds;

fn run(spec: &MachineSpec, inst: &str, m: usize, cap: usize, complete: bool) -> npsim::exp::ExpResult {
    let word = spec.parse_word(inst).unwrap();
    simulate_all_certificates_exp(spec, &word, m, ExpConfig { step_cap: cap, complete }).unwrap()
}

#[test]
fn eq_accepts_and_branches_over_the_tape_alphabet() {
    let spec = m_eq();
    let r = run(&spec, "0#", 1, 90, true);
    assert_eq!(r.outcome, Outcome::Yes);
    let at_cert: Vec<_> = r.graph.layer_nodes(2, 0).collect();
    assert_eq!(at_cert.len(), spec.num_symbols());
    assert_eq!(spec.num_symbols(), 4);
    assert_eq!(r.accepting_edges.len(), 1);
    assert_eq!(r.final_edges.len(), 4);
    assert_eq!((r.branches.accepted, r.branches.rejected), (1, 3));
}

#[test]
fn eq_never_rejects() {
    let spec = m_eq_never();
    let r = run(&spec, "0#", 1, 90, true);
    assert_eq!(r.outcome, Outcome::No);
    assert!(r.accepting_edges.is_empty());
}

#[test]
fn short_circuit_keeps_the_verdict() {
    for (_, text, inst, m) in CORPUS {
        let spec = parse_machine_spec(text).unwrap();
        let full = run(&spec, inst, *m, 200, true);
        let quick = run(&spec, inst, *m, 200, false);
        assert_eq!(full.outcome, quick.outcome);
        assert!(quick.graph.edge_count() <= full.graph.edge_count());
        let word = spec.parse_word(inst).unwrap();
        assert_eq!(full.outcome, enumerate_certificates_direct(&spec, &word, *m, 200).outcome);
    }
}

#[test]
fn empty_instance_is_an_error() {
    let r = simulate_all_certificates_exp(&m_eq(), &[], 1, ExpConfig { step_cap: 10, complete: true });
    assert_eq!(r.unwrap_err(), ExpError::EmptyInstance);
}

#[test]
fn step_cap_yields_capped() {
    let spec = m_eq();
    assert_eq!(run(&spec, "0#", 1, 2, true).outcome, Outcome::Capped);
}

#[test]
fn eq_footmarks_within_bounds() {
    let r = run(&m_eq(), "0#", 1, 16, true);
    let b = footmarks_bounds(&r.graph, 16);
    assert!(b.holds());
    assert!(b.width <= 33 && b.height <= 16);
    assert_eq!((b.width, b.height), (4, 0));
}

#[test]
fn bounds_checks() {
    assert!(footmarks_bounds(&CompGraph::new(), 0).holds());
    let over = BoundsReport::check(5, 1, 1, 1, 2);
    assert!(!over.size_ok && !over.holds());
    assert!(!BoundsReport::check(1, 4, 1, 2, 1).width_ok);
    assert!(!BoundsReport::check(1, 1, 2, 2, 1).height_ok);
}

/// Union of the per-certificate walks of `L ∘ y`.
fn replayed_footmarks(spec: &MachineSpec, word: &[SymbolId], m: usize, cap: usize) -> BTreeSet<Edge> {
    let mut edges = BTreeSet::new();
    for_each_certificate(spec, m, |y| {
        let tape: Vec<_> = word.iter().chain(y).copied().collect();
        edges.extend(simulate_tape(spec, &tape, cap).unwrap().walk.edges);
    });
    edges
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn footmarks_are_the_union_of_certificate_walks(seed in any::<u64>()) {
        let case = random_case(seed, &small_bounds());
        let spec = parse_machine_spec(&case.machine).unwrap();
        let word = spec.parse_word(&case.instance).unwrap();
        let r = simulate_all_certificates_exp(
            &spec, &word, case.m, ExpConfig { step_cap: case.step_cap, complete: true },
        ).unwrap();
        prop_assert_eq!(r.graph.edge_set(), replayed_footmarks(&spec, &word, case.m, case.step_cap));
        let direct = enumerate_certificates_direct(&spec, &word, case.m, case.step_cap).outcome;
        prop_assert_eq!(r.outcome, direct);
        prop_assert!(footmarks_bounds(&r.graph, case.step_cap).holds());
    }
}
