//! Exhaustive all-certificates simulation.
//!
//! Runs the machine depth first, branching over the whole tape alphabet the
//! first time the head lands on a certificate cell. Every traversed edge goes
//! into one shared graph, so a complete sweep yields the footmarks of all
//! computation walks.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{CompGraph, CompNode, Edge};
use crate::tm::{next_node, MachineSpec, SymbolId};
use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpConfig {
    /// Per-branch step limit.
    pub step_cap: usize,
    /// Keep exploring after the first acceptance.
    pub complete: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BranchCounts {
    pub accepted: usize,
    pub rejected: usize,
    pub stuck: usize,
    pub capped: usize,
}

#[derive(Clone, Debug)]
pub struct ExpResult {
    pub outcome: Outcome,
    pub graph: CompGraph,
    pub initial: CompNode,
    /// Last edge of every halting branch.
    pub final_edges: BTreeSet<Edge>,
    /// Final edges entering the accept state.
    pub accepting_edges: BTreeSet<Edge>,
    pub branches: BranchCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpError {
    #[error("instance must be non-empty")]
    EmptyInstance,
}

struct Run<'a> {
    spec: &'a MachineSpec,
    instance: &'a [SymbolId],
    m: usize,
    cfg: ExpConfig,
    graph: CompGraph,
    final_edges: BTreeSet<Edge>,
    accepting_edges: BTreeSet<Edge>,
    counts: BranchCounts,
}

impl Run<'_> {
    fn in_certificate(&self, i: i32) -> bool {
        let n = self.instance.len() as i32;
        i >= n && i < n + self.m as i32
    }

    fn fixed_symbol(&self, i: i32) -> SymbolId {
        if i >= 0 && (i as usize) < self.instance.len() {
            self.instance[i as usize]
        } else {
            self.spec.blank()
        }
    }

    fn step(&mut self, v: CompNode, w: CompNode) -> Edge {
        let e = Edge { init: v, term: w };
        self.graph.insert_edge(e);
        e
    }

    /// Follows one branch; returns `true` to stop the whole sweep.
    fn proceed(
        &mut self,
        mut v: CompNode,
        mut surface: BTreeMap<i32, CompNode>,
        mut steps: usize,
        mut last: Option<Edge>,
    ) -> bool {
        loop {
            if self.spec.is_final(v.state) {
                if let Some(e) = last {
                    self.final_edges.insert(e);
                }
                if v.state == self.spec.accept() {
                    self.counts.accepted += 1;
                    if let Some(e) = last {
                        self.accepting_edges.insert(e);
                    }
                    return !self.cfg.complete;
                }
                self.counts.rejected += 1;
                return false;
            }
            if steps >= self.cfg.step_cap {
                self.counts.capped += 1;
                return false;
            }
            let Some(d) = v.derived(self.spec) else {
                self.counts.stuck += 1;
                return false;
            };
            let i = d.next_index;
            if !surface.contains_key(&i) && self.in_certificate(i) {
                surface.insert(v.index, v);
                for s in self.spec.tape_alphabet() {
                    let w = CompNode::floor(i, d.next_state, s);
                    let e = self.step(v, w);
                    if self.proceed(w, surface.clone(), steps + 1, Some(e)) {
                        return true;
                    }
                }
                return false;
            }
            let w = next_node(self.spec, &surface, &v, |i| self.fixed_symbol(i))
                .expect("derived fields exist");
            last = Some(self.step(v, w));
            surface.insert(v.index, v);
            v = w;
            steps += 1;
        }
    }
}

/// Simulates the verifier on `instance ∘ y` for every `y ∈ Γ^m` at once.
///
/// `Yes` iff some branch accepts. Otherwise `Capped` if some branch hit the step
/// cap and `No` if not. Stuck branches are counted and treated as rejecting.
pub fn simulate_all_certificates_exp(
    spec: &MachineSpec,
    instance: &[SymbolId],
    m: usize,
    cfg: ExpConfig,
) -> Result<ExpResult, ExpError> {
    if instance.is_empty() {
        return Err(ExpError::EmptyInstance);
    }
    let v0 = CompNode::floor(0, spec.initial(), instance[0]);
    let mut run = Run {
        spec,
        instance,
        m,
        cfg,
        graph: CompGraph::new(),
        final_edges: BTreeSet::new(),
        accepting_edges: BTreeSet::new(),
        counts: BranchCounts::default(),
    };
    run.graph.get_or_create_node(v0).expect("floor node");
    run.proceed(v0, BTreeMap::new(), 0, None);
    let outcome = if run.counts.accepted > 0 {
        Outcome::Yes
    } else if run.counts.capped > 0 {
        Outcome::Capped
    } else {
        Outcome::No
    };
    Ok(ExpResult {
        outcome,
        graph: run.graph,
        initial: v0,
        final_edges: run.final_edges,
        accepting_edges: run.accepting_edges,
        branches: run.counts,
    })
}

/// Measured footmark dimensions against the step bound `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub p: usize,
    /// Distinct cell indices carrying a node.
    pub width: usize,
    /// Largest tier.
    pub height: u32,
    /// Largest number of nodes on one cell.
    pub layer_height: usize,
    pub edges: usize,
    pub width_ok: bool,
    pub height_ok: bool,
    /// `edges <= width * layer_height^2`.
    pub size_ok: bool,
    /// `edges <= width * height^2`, reported for comparison only.
    pub tier_size_ok: bool,
}

impl BoundsReport {
    pub fn check(p: usize, width: usize, height: u32, layer_height: usize, edges: usize) -> Self {
        let h = height as usize;
        BoundsReport {
            p,
            width,
            height,
            layer_height,
            edges,
            width_ok: width <= 2 * p + 1,
            height_ok: h <= p,
            size_ok: edges <= width * layer_height * layer_height,
            tier_size_ok: edges <= width * h * h,
        }
    }

    pub fn holds(&self) -> bool {
        self.width_ok && self.height_ok && self.size_ok
    }
}

pub fn footmarks_bounds(g: &CompGraph, p: usize) -> BoundsReport {
    if g.node_count() == 0 {
        return BoundsReport::check(p, 0, 0, 0, 0);
    }
    BoundsReport::check(p, g.width(), g.height(), g.layer_height(), g.edge_count())
}
