//! Walk-existence verification by iterative pruning.
//!
//! The verifier keeps the feasible graph for a single target edge and
//! repeatedly takes the canonical walk from the initial nodes. A walk ending at
//! the target proves existence. Otherwise the first merging edge of the walk (or
//! its last edge) is pruned, and the feasible graph is recomputed with the
//! truncated walks temporarily extended so they survive. Once only one walk is
//! left, its first edge outside every attempted walk is removed from the
//! verifier's graph and the search restarts.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::feasible::compute_feasible_graph;
use crate::graph::{get_precedents, CompGraph, CompNode, Edge, Surface, Walk};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("no surface-consistent edge leaves an initial node")]
    NoWalk,
    #[error("walk edge is no longer in the graph")]
    StaleWalk,
}

/// Deterministic maximal walk from the initial nodes.
///
/// Starts with the canonically smallest admissible edge leaving an initial
/// node and keeps taking the smallest surface-consistent continuation.
pub fn take_arbitrary_walk(g: &CompGraph, initial: &BTreeSet<CompNode>) -> Result<Walk, VerifyError> {
    let empty = Surface::default();
    let first = initial
        .iter()
        .filter(|v| v.tier == 0)
        .flat_map(|v| g.out_edges(v))
        .filter(|e| empty.admits(&e.term))
        .min()
        .ok_or(VerifyError::NoWalk)?;
    let mut surface = Surface::default();
    let mut edges = Vec::new();
    let mut next = Some(first);
    while let Some(e) = next {
        surface.record(&e.init);
        edges.push(e);
        next = g
            .out_edges(&e.term)
            .into_iter()
            .find(|f| surface.admits(&f.term));
    }
    if let Some(last) = edges.last() {
        surface.record(&last.term);
    }
    Ok(Walk { edges, surface })
}

/// First edge of `w` entering a node with in-degree above one and some
/// outgoing edge; the last edge of `w` if there is none.
pub fn find_first_merging_edge_or_final_edge(g: &CompGraph, w: &Walk) -> Option<Edge> {
    w.edges
        .iter()
        .find(|e| g.in_degree(&e.term) > 1 && g.out_degree(&e.term) > 0)
        .or(w.edges.last())
        .copied()
}

/// Pruning context.
#[derive(Clone, Debug)]
pub struct PruneState {
    /// Current pruned graph.
    pub graph: CompGraph,
    /// Graph before the first prune; source of extension edges.
    pub original: CompGraph,
    pub finals: BTreeSet<Edge>,
    pub initial: BTreeSet<CompNode>,
    /// Union of all attempted walks.
    pub attempted: BTreeSet<Edge>,
    pub stage: usize,
}

impl PruneState {
    pub fn new(g: &CompGraph, initial: &BTreeSet<CompNode>, finals: &BTreeSet<Edge>) -> Self {
        PruneState {
            graph: g.clone(),
            original: g.clone(),
            finals: finals.clone(),
            initial: initial.clone(),
            attempted: BTreeSet::new(),
            stage: 0,
        }
    }
}

/// Removes the first merging edge of `w` (or its final edge) and recomputes
/// the feasible graph. Returns the removed edge.
///
/// Before recomputing, every walk truncated by earlier prunes is extended by
/// one edge of the original graph, and the extension edges join the final-edge
/// set so the truncated walks are not stripped. The extension edges are dropped
/// again from the result.
pub fn prune_walk(state: &mut PruneState, w: &Walk) -> Result<Edge, VerifyError> {
    if w.is_empty() || w.edges.iter().any(|e| !state.graph.contains_edge(e)) {
        return Err(VerifyError::StaleWalk);
    }
    let cut = find_first_merging_edge_or_final_edge(&state.graph, w).expect("walk is non-empty");
    let mut extended = state.finals.clone();
    let mut work = state.graph.clone();
    for e in state.original.edges() {
        if *e == cut || extended.contains(e) || state.graph.contains_edge(e) {
            continue;
        }
        if !state.graph.contains_node(&e.init) {
            continue;
        }
        let legal = match e.term.precedent_case() {
            None => true,
            Some(k) => state.graph.case_members(k).next().is_some(),
        };
        if legal {
            work.insert_edge(*e);
            extended.insert(*e);
        }
    }
    work.remove_edge(&cut);
    let pruned = compute_feasible_graph(&work, &state.initial, &extended);
    state.graph = pruned.filter_edges(|e| !extended.contains(e) || state.finals.contains(e));
    state.stage += 1;
    Ok(cut)
}

/// One entry of the verification log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub iteration: usize,
    pub action: &'static str,
    pub edge: Option<Edge>,
    pub edges_left: usize,
}

fn first_unattempted(attempted: &BTreeSet<Edge>, w: &Walk) -> Option<Edge> {
    let n = w.edges.len();
    w.edges[..n.saturating_sub(1)]
        .iter()
        .find(|e| !attempted.contains(e))
        .copied()
}

fn find_inner(
    g: &CompGraph,
    initial: &BTreeSet<CompNode>,
    target: &Edge,
    iteration: usize,
    trace: &mut Vec<TraceEvent>,
) -> Option<Edge> {
    let finals = BTreeSet::from([*target]);
    let mut state = PruneState::new(g, initial, &finals);
    loop {
        if state.graph.is_empty() {
            return None;
        }
        let Ok(w) = take_arbitrary_walk(&state.graph, initial) else {
            return None;
        };
        if w.last_edge() == Some(*target) {
            return Some(*target);
        }
        if state.graph.edge_count() == w.len() {
            return first_unattempted(&state.attempted, &w);
        }
        state.attempted.extend(w.edges.iter().copied());
        let cut = prune_walk(&mut state, &w).ok()?;
        trace.push(TraceEvent {
            iteration,
            action: "prune",
            edge: Some(cut),
            edges_left: state.graph.edge_count(),
        });
    }
}

/// Returns `target` if some taken walk ends with it, the first edge of the last
/// surviving walk outside the attempted walks, or `None` once the pruned graph
/// runs out of walks.
pub fn find_feasible_or_disjoint_edge(
    g: &CompGraph,
    initial: &BTreeSet<CompNode>,
    target: &Edge,
) -> Option<Edge> {
    find_inner(g, initial, target, 0, &mut Vec::new())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub found: bool,
    /// Outer find/remove/recompute iterations.
    pub iterations: usize,
    pub feasible_rebuilds: usize,
    pub trace: Vec<TraceEvent>,
}

/// Decides whether a surface-consistent walk from `initial` ends with `target`.
pub fn verify_existence_of_walk(
    g: &CompGraph,
    initial: &BTreeSet<CompNode>,
    target: &Edge,
) -> VerifyOutcome {
    let mut out = VerifyOutcome::default();
    if !g.contains_edge(target) {
        return out;
    }
    if target.term.tier > 0 && get_precedents(g, target).is_empty() {
        return out;
    }
    let finals = BTreeSet::from([*target]);
    let mut h = compute_feasible_graph(g, initial, &finals);
    out.feasible_rebuilds += 1;
    while h.contains_edge(target) {
        out.iterations += 1;
        match find_inner(&h, initial, target, out.iterations, &mut out.trace) {
            Some(e) if e == *target => {
                out.trace.push(TraceEvent {
                    iteration: out.iterations,
                    action: "found",
                    edge: Some(e),
                    edges_left: h.edge_count(),
                });
                out.found = true;
                return out;
            }
            Some(e) => {
                h.remove_edge(&e);
                h = compute_feasible_graph(&h, initial, &finals);
                out.feasible_rebuilds += 1;
                out.trace.push(TraceEvent {
                    iteration: out.iterations,
                    action: "remove",
                    edge: Some(e),
                    edges_left: h.edge_count(),
                });
            }
            None => {
                out.trace.push(TraceEvent {
                    iteration: out.iterations,
                    action: "exhausted",
                    edge: None,
                    edges_left: h.edge_count(),
                });
                return out;
            }
        }
    }
    out
}
