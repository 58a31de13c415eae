mod common;

use std::collections::BTreeSet;

use npsim::exp::{simulate_all_certificates_exp, ExpConfig};
use npsim::fixtures::{m_bounce, m_eq, m_eq_never, m_scan};
use npsim::graph::{walk_exists_to, CompNode, Naming};
use npsim::harness::random_case;
use npsim::poly::{
    get_next_edges, simulate_all_certificates_poly, Fault, NpGraphParams, PolyConfig, PolyError, Region,
    Verifier,
};
use npsim::tm::{parse_machine_spec, simulate_dtm, MachineSpec};
use npsim::Outcome;
use proptest::prelude::*;

use common::small_bounds;

fn poly(spec: &MachineSpec, inst: &str, m: usize, cfg: PolyConfig) -> npsim::poly::PolyResult {
    simulate_all_certificates_poly(spec, &spec.parse_word(inst).unwrap(), m, cfg).unwrap()
}

#[test]
fn regions_of_the_tape() {
    let spec = m_eq();
    let word = spec.parse_word("0#").unwrap();
    let np = NpGraphParams { spec: &spec, instance: &word, m: 1, fault: None };
    assert_eq!(np.region(0), Region::Fixed(word[0]));
    assert_eq!(np.region(1), Region::Fixed(word[1]));
    assert_eq!(np.region(2), Region::Certificate);
    assert_eq!(np.region(3), Region::Blank);
    assert_eq!(np.region(-1), Region::Blank);
}

#[test]
fn next_edges_onto_a_certificate_cell_cover_the_tape_alphabet() {
    let spec = m_eq();
    let naming = Naming::from_spec(&spec);
    let word = spec.parse_word("0#").unwrap();
    let v = naming.parse_node("(1,0,p0,#,⊥,⊥)").unwrap();
    let h = npsim::graph::CompGraph::new();
    let np = NpGraphParams { spec: &spec, instance: &word, m: 1, fault: None };
    let next = get_next_edges(&np, &h, &v);
    assert_eq!(next.len(), 4);
    assert!(next.iter().all(|e| e.term.index == 2 && e.term.tier == 0));
    let faulty = NpGraphParams { fault: Some(Fault::DropFirstCertificateSymbol), ..np };
    let cut = get_next_edges(&faulty, &h, &v);
    assert_eq!(cut.len(), 3);
    assert!(cut.iter().all(|e| spec.symbol_name(e.term.symbol) != "0"));
}

#[test]
fn next_edges_left_of_the_input_read_blank() {
    let spec = m_bounce();
    let naming = Naming::from_spec(&spec);
    let word = spec.parse_word("aa").unwrap();
    let np = NpGraphParams { spec: &spec, instance: &word, m: 0, fault: None };
    let v = naming.parse_node("(0,0,q1,a,⊥,⊥)").unwrap();
    let next = get_next_edges(&np, &npsim::graph::CompGraph::new(), &v);
    assert_eq!(next.len(), 1);
    assert_eq!(next[0].term, CompNode::floor(-1, spec.state_id("q2").unwrap(), spec.blank()));
    let done = naming.parse_node("(1,1,qacc,y,q1,a)").unwrap();
    assert!(get_next_edges(&np, &npsim::graph::CompGraph::new(), &done).is_empty());
}

#[test]
fn next_edges_revisit_the_layer_below() {
    let spec = m_bounce();
    let w = simulate_dtm(&spec, &spec.parse_word("aa").unwrap(), 100).unwrap().walk;
    let h = npsim::graph::CompGraph::from_edges(&w.edges[..1]);
    let word = spec.parse_word("aa").unwrap();
    let np = NpGraphParams { spec: &spec, instance: &word, m: 0, fault: None };
    let next = get_next_edges(&np, &h, &w.edges[1].term);
    assert!(next.contains(&w.edges[2]));
    assert!(next.iter().any(|e| e.term.tier == 0));
}

#[test]
fn fixture_verdicts() {
    assert_eq!(poly(&m_eq(), "0#", 1, PolyConfig::new(90)).outcome, Outcome::Yes);
    assert_eq!(poly(&m_eq(), "1#", 1, PolyConfig::new(90)).outcome, Outcome::Yes);
    assert_eq!(poly(&m_eq_never(), "0#", 1, PolyConfig::new(90)).outcome, Outcome::No);
    assert_eq!(poly(&m_bounce(), "aa", 0, PolyConfig::new(40)).outcome, Outcome::Yes);
}

#[test]
fn deterministic_run_builds_exactly_its_walk() {
    let spec = m_scan();
    let w = simulate_dtm(&spec, &spec.parse_word("aa").unwrap(), 100).unwrap().walk;
    let r = poly(&spec, "aa", 0, PolyConfig::new(40));
    assert_eq!(r.outcome, Outcome::Yes);
    assert_eq!(r.graph.edge_set(), w.edge_set());
    assert_eq!(r.initial, w.start().unwrap());
}

#[test]
fn dropped_certificate_symbol_loses_the_only_witness() {
    let mut cfg = PolyConfig::new(90);
    cfg.fault = Some(Fault::DropFirstCertificateSymbol);
    assert_eq!(poly(&m_eq(), "0#", 1, cfg).outcome, Outcome::No);
    assert_eq!(poly(&m_eq(), "1#", 1, cfg).outcome, Outcome::Yes);
}

#[test]
fn budgets_and_caps() {
    let mut cfg = PolyConfig::new(90);
    cfg.max_verify_calls = 0;
    let r = poly(&m_eq(), "0#", 1, cfg);
    assert_eq!(r.outcome, Outcome::Capped);
    assert!(r.cap_reason.unwrap().contains("budget"));
    assert_eq!(r.stats.verify_calls, 0);

    let r = poly(&m_scan(), "aaaa", 0, PolyConfig::new(2));
    assert_eq!(r.outcome, Outcome::Capped);
    assert!(r.stats.capped_candidates > 0);

    let r = poly(&m_eq(), "0#", 1, PolyConfig::new(90));
    assert!(r.stats.verify_calls >= r.stats.verified_edges);
    assert!(r.stats.rounds >= 1);
    assert_eq!(r.stats.iteration_overruns, 0);
}

#[test]
fn empty_instance_is_an_error() {
    let r = simulate_all_certificates_poly(&m_eq(), &[], 1, PolyConfig::new(10));
    assert_eq!(r.unwrap_err(), PolyError::EmptyInstance);
}

#[test]
fn exhaustive_verifier_agrees_on_fixtures() {
    for (spec, inst, m) in [(m_eq(), "0#", 1), (m_eq_never(), "1#", 1), (m_bounce(), "aa", 0)] {
        let mut cfg = PolyConfig::new(90);
        let a = poly(&spec, inst, m, cfg);
        cfg.verifier = Verifier::Exhaustive;
        let b = poly(&spec, inst, m, cfg);
        assert_eq!(a.outcome, b.outcome);
        assert_eq!(a.graph, b.graph);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_expanded_edge_lies_on_a_walk(seed in any::<u64>()) {
        let case = random_case(seed, &small_bounds());
        let spec = parse_machine_spec(&case.machine).unwrap();
        let word = spec.parse_word(&case.instance).unwrap();
        let r = simulate_all_certificates_poly(&spec, &word, case.m, PolyConfig::new(case.step_cap)).unwrap();
        let v0 = BTreeSet::from([r.initial]);
        for e in r.graph.edges() {
            prop_assert!(walk_exists_to(&r.graph, &v0, e));
            prop_assert!(e.term.state != spec.reject());
            prop_assert!(e.term.tier as usize <= case.step_cap);
        }
        if r.outcome == Outcome::Yes {
            prop_assert!(r.graph.edges().any(|e| e.term.state == spec.accept()));
        }
    }

    #[test]
    fn next_edges_contain_every_exhaustive_successor(seed in any::<u64>()) {
        let case = random_case(seed, &small_bounds());
        let spec = parse_machine_spec(&case.machine).unwrap();
        let word = spec.parse_word(&case.instance).unwrap();
        let g = simulate_all_certificates_exp(
            &spec, &word, case.m, ExpConfig { step_cap: case.step_cap, complete: true },
        ).unwrap().graph;
        let np = NpGraphParams { spec: &spec, instance: &word, m: case.m, fault: None };
        for v in g.nodes() {
            let next = get_next_edges(&np, &g, &v);
            for e in g.out_edges(&v) {
                prop_assert!(next.contains(&e));
            }
        }
    }

    #[test]
    fn without_certificates_the_verdict_is_the_run(seed in any::<u64>()) {
        let mut case = random_case(seed, &small_bounds());
        case.m = 0;
        let spec = parse_machine_spec(&case.machine).unwrap();
        let word = spec.parse_word(&case.instance).unwrap();
        let run = simulate_dtm(&spec, &word, case.step_cap).unwrap();
        let r = simulate_all_certificates_poly(&spec, &word, 0, PolyConfig::new(case.step_cap)).unwrap();
        if run.halted {
            prop_assert_eq!(r.outcome, Outcome::from_bool(run.accepted(&spec)));
        } else {
            prop_assert_ne!(r.outcome, Outcome::Yes);
        }
    }
}
