//! Boundary-expansion simulator built on walk verification.
//!
//! Starting from the initial node, every round collects the boundary edges of
//! the visited graph, keeps those for which a surface-consistent walk ending in
//! them exists, and adds them. The instance is accepted once a verified edge
//! enters the accept state.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::{walk_exists_to, CompGraph, CompNode, Edge};
use crate::tm::{MachineSpec, SymbolId};
use crate::verify::verify_existence_of_walk;
use crate::Outcome;

/// Deliberate defects used to check that the differential harness notices
/// a wrong engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Never offers the first tape symbol on a certificate cell.
    DropFirstCertificateSymbol,
}

/// Walk-existence check used for boundary edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verifier {
    /// Iterative pruning.
    #[default]
    Pruning,
    /// Exhaustive surface-consistent walk enumeration; for attributing
    /// disagreements.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyConfig {
    /// Largest tier and largest `|index|` a node may have.
    pub step_cap: usize,
    /// Budget of walk-verification calls.
    pub max_verify_calls: usize,
    pub fault: Option<Fault>,
    pub verifier: Verifier,
}

impl PolyConfig {
    pub fn new(step_cap: usize) -> Self {
        PolyConfig {
            step_cap,
            max_verify_calls: 50_000,
            fault: None,
            verifier: Verifier::Pruning,
        }
    }
}

/// Where a cell's first symbol comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Fixed(SymbolId),
    Certificate,
    Blank,
}

/// Instance-dependent data for computing next edges.
#[derive(Clone, Copy, Debug)]
pub struct NpGraphParams<'a> {
    pub spec: &'a MachineSpec,
    pub instance: &'a [SymbolId],
    pub m: usize,
    pub fault: Option<Fault>,
}

impl NpGraphParams<'_> {
    pub fn region(&self, i: i32) -> Region {
        let n = self.instance.len() as i32;
        if i >= 0 && i < n {
            Region::Fixed(self.instance[i as usize])
        } else if i >= n && i < n + self.m as i32 {
            Region::Certificate
        } else {
            Region::Blank
        }
    }

    fn floor_symbols(&self, i: i32) -> Vec<SymbolId> {
        match self.region(i) {
            Region::Fixed(s) => vec![s],
            Region::Blank => vec![self.spec.blank()],
            Region::Certificate => {
                let skip = usize::from(self.fault == Some(Fault::DropFirstCertificateSymbol));
                self.spec.tape_alphabet().skip(skip).collect()
            }
        }
    }
}

/// Every edge the machine could take from `v` given the nodes of `h`.
///
/// A tier-0 successor exists for each symbol the target cell may hold first. A
/// tier-`t'` successor exists for each node `p` of `h` on the target cell at tier
/// `t' - 1` whose head moves back onto the cell of `v`; it reads what `p` wrote.
/// Final and stuck nodes have no successors.
pub fn get_next_edges(np: &NpGraphParams, h: &CompGraph, v: &CompNode) -> Vec<Edge> {
    let Some(d) = v.derived(np.spec) else {
        return Vec::new();
    };
    let i = d.next_index;
    let mut out: Vec<Edge> = np
        .floor_symbols(i)
        .into_iter()
        .map(|s| Edge {
            init: *v,
            term: CompNode::floor(i, d.next_state, s),
        })
        .collect();
    if let Some(tm) = h.max_tier_at(i) {
        for t in 1..=tm + 1 {
            for p in h.layer_nodes(i, t - 1) {
                let Some(pd) = p.derived(np.spec) else {
                    continue;
                };
                if pd.next_index != v.index {
                    continue;
                }
                out.push(Edge {
                    init: *v,
                    term: CompNode {
                        index: i,
                        tier: t,
                        state: d.next_state,
                        symbol: pd.output,
                        last: Some((p.state, p.symbol)),
                    },
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PolyStats {
    pub rounds: usize,
    pub verify_calls: usize,
    pub verified_edges: usize,
    /// Largest number of find/remove iterations in one verification.
    pub max_verify_iterations: usize,
    /// Verifications whose iteration count exceeded the edge count of their graph.
    pub iteration_overruns: usize,
    pub feasible_rebuilds: usize,
    /// Boundary edges dropped by the tier or index cap.
    pub capped_candidates: usize,
}

/// Wall-clock time per phase, kept apart from the deterministic counters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PolyTimings {
    pub boundary_us: u64,
    pub verify_us: u64,
}

#[derive(Clone, Debug)]
pub struct PolyResult {
    pub outcome: Outcome,
    pub graph: CompGraph,
    pub initial: CompNode,
    pub stats: PolyStats,
    pub timings: PolyTimings,
    /// Why the run stopped undecided.
    pub cap_reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("instance must be non-empty")]
    EmptyInstance,
}

fn within_caps(v: &CompNode, step_cap: usize) -> bool {
    (v.tier as usize) <= step_cap && v.index.unsigned_abs() as usize <= step_cap
}

fn boundary_edges(
    np: &NpGraphParams,
    h: &CompGraph,
    cfg: &PolyConfig,
    stats: &mut PolyStats,
) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for u in h.nodes() {
        for e in get_next_edges(np, h, &u) {
            if e.term.state == np.spec.reject() || h.contains_node(&e.term) {
                continue;
            }
            if !within_caps(&e.term, cfg.step_cap) {
                stats.capped_candidates += 1;
                continue;
            }
            out.insert(e);
        }
    }
    out
}

/// Expands `h` round by round until an accepting edge is verified or no
/// boundary edge verifies.
pub fn is_accepted_on_footmarks(
    np: &NpGraphParams,
    h: &mut CompGraph,
    initial: &CompNode,
    cfg: &PolyConfig,
    stats: &mut PolyStats,
    timings: &mut PolyTimings,
) -> (Outcome, Option<String>) {
    let initial_set = BTreeSet::from([*initial]);
    let t = Instant::now();
    let mut queue = boundary_edges(np, h, cfg, stats);
    timings.boundary_us += t.elapsed().as_micros() as u64;
    loop {
        stats.rounds += 1;
        let mut verified = Vec::new();
        let t = Instant::now();
        for e in &queue {
            if stats.verify_calls >= cfg.max_verify_calls {
                return (
                    Outcome::Capped,
                    Some(format!("verification budget {} exhausted", cfg.max_verify_calls)),
                );
            }
            let mut trial = h.clone();
            trial.insert_edge(*e);
            stats.verify_calls += 1;
            let found = match cfg.verifier {
                Verifier::Pruning => {
                    let out = verify_existence_of_walk(&trial, &initial_set, e);
                    stats.max_verify_iterations = stats.max_verify_iterations.max(out.iterations);
                    stats.feasible_rebuilds += out.feasible_rebuilds;
                    if out.iterations > trial.edge_count() {
                        stats.iteration_overruns += 1;
                    }
                    out.found
                }
                Verifier::Exhaustive => walk_exists_to(&trial, &initial_set, e),
            };
            if found {
                verified.push(*e);
            }
        }
        timings.verify_us += t.elapsed().as_micros() as u64;
        if verified.is_empty() {
            return if stats.capped_candidates > 0 {
                (Outcome::Capped, Some(format!("step cap {} reached", cfg.step_cap)))
            } else {
                (Outcome::No, None)
            };
        }
        for e in &verified {
            h.insert_edge(*e);
        }
        stats.verified_edges += verified.len();
        if verified.iter().any(|e| e.term.state == np.spec.accept()) {
            return (Outcome::Yes, None);
        }
        let t = Instant::now();
        let fresh = boundary_edges(np, h, cfg, stats);
        timings.boundary_us += t.elapsed().as_micros() as u64;
        queue.extend(fresh);
        for e in &verified {
            queue.remove(e);
        }
    }
}

/// Decides whether some certificate `y ∈ Γ^m` makes the machine accept
/// `instance ∘ y`, without enumerating certificates.
pub fn simulate_all_certificates_poly(
    spec: &MachineSpec,
    instance: &[SymbolId],
    m: usize,
    cfg: PolyConfig,
) -> Result<PolyResult, PolyError> {
    if instance.is_empty() {
        return Err(PolyError::EmptyInstance);
    }
    let np = NpGraphParams {
        spec,
        instance,
        m,
        fault: cfg.fault,
    };
    let v0 = CompNode::floor(0, spec.initial(), instance[0]);
    let mut h = CompGraph::new();
    h.get_or_create_node(v0).expect("floor node");
    let mut stats = PolyStats::default();
    let mut timings = PolyTimings::default();
    let done = |outcome, h, stats, timings, cap_reason| {
        Ok(PolyResult {
            outcome,
            graph: h,
            initial: v0,
            stats,
            timings,
            cap_reason,
        })
    };
    if spec.is_final(v0.state) {
        return done(Outcome::from_bool(v0.state == spec.accept()), h, stats, timings, None);
    }
    let first: Vec<Edge> = get_next_edges(&np, &h, &v0)
        .into_iter()
        .filter(|e| e.term.state != spec.reject())
        .collect();
    for e in &first {
        h.insert_edge(*e);
    }
    if first.iter().any(|e| e.term.state == spec.accept()) {
        return done(Outcome::Yes, h, stats, timings, None);
    }
    let (outcome, reason) =
        is_accepted_on_footmarks(&np, &mut h, &v0, &cfg, &mut stats, &mut timings);
    done(outcome, h, stats, timings, reason)
}
