//! Cover edges and feasible-graph construction.
//!
//! The feasible graph keeps exactly the edges that survive repeated removal of
//! step-pendant edges. It is built by alternating left-to-right and
//! right-to-left sweeps. Each sweep rebuilds the graph one edge index at a time:
//! it climbs succedents from floor edges, admitting only edges index-adjacent to
//! the layer already rebuilt, then descends precedents from the cover edges of
//! the admitted layer.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::graph::{
    ceiling_adjacent_edges, get_precedents, get_succedents, index_adjacent_with, is_left_pendant,
    is_right_pendant, CompGraph, CompNode, Edge,
};

/// Directed path from `from` to `to` in `g`.
fn reaches(g: &CompGraph, from: CompNode, to: CompNode) -> bool {
    if from == to {
        return true;
    }
    let mut seen = HashSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for e in g.out_edges(&x) {
            if e.term == to {
                return true;
            }
            if seen.insert(e.term) {
                queue.push_back(e.term);
            }
        }
    }
    false
}

/// Cover edges of `g` with respect to `finals`.
///
/// Starting from the final edges, repeatedly adds every ceiling-adjacent edge
/// `f` of a queued edge `e` that shares a vertex with `e` or has a directed
/// path from `term(f)` to `init(e)`.
pub fn compute_cover_edges(g: &CompGraph, finals: &BTreeSet<Edge>) -> BTreeSet<Edge> {
    let mut cover: BTreeSet<Edge> = finals.iter().filter(|e| g.contains_edge(e)).copied().collect();
    let mut queue: VecDeque<Edge> = cover.iter().copied().collect();
    while let Some(e) = queue.pop_front() {
        for f in ceiling_adjacent_edges(g, &e) {
            if cover.contains(&f) {
                continue;
            }
            if f.shares_vertex(&e) || reaches(g, f.term, e.init) {
                cover.insert(f);
                queue.push_back(f);
            }
        }
    }
    cover
}

/// Step-pendancy as defined: ex-pendant, or a non-floor edge without
/// precedents, or a non-cover edge without succedents.
pub fn is_step_pendant(g: &CompGraph, e: &Edge, cover: &BTreeSet<Edge>) -> bool {
    is_left_pendant(g, e)
        || is_right_pendant(g, e)
        || (e.term.tier > 0 && get_precedents(g, e).is_empty())
        || (!cover.contains(e) && get_succedents(g, e).is_empty())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FeasibleStats {
    /// Full left-right-left iterations.
    pub iterations: usize,
    pub sweeps: usize,
    pub cover_edges: usize,
}

struct Ctx<'a> {
    finals: &'a BTreeSet<Edge>,
    initial: &'a BTreeSet<CompNode>,
    cover: &'a BTreeSet<Edge>,
}

/// Admits edges of one index layer: floor edges first, then succedents of
/// admitted edges, keeping only those index-adjacent to the previous layer.
fn step_up_edges(
    g: &CompGraph,
    layer_index: i32,
    prev_nodes: &HashSet<CompNode>,
    prev_index: i32,
    ctx: &Ctx,
) -> BTreeSet<Edge> {
    let mut queue: VecDeque<Edge> = g
        .edges_at(layer_index)
        .filter(|e| e.term.tier == 0)
        .copied()
        .collect();
    let mut seen: HashSet<Edge> = queue.iter().copied().collect();
    let mut admitted = BTreeSet::new();
    while let Some(e) = queue.pop_front() {
        let ok = index_adjacent_with(&e, prev_index, g, ctx.finals, ctx.initial, |v| {
            prev_nodes.contains(v)
        });
        if !ok {
            continue;
        }
        admitted.insert(e);
        for s in get_succedents(g, &e) {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    admitted
}

/// Keeps admitted edges reachable downwards through precedents from an
/// admitted cover edge.
fn step_down_edges(g: &CompGraph, admitted: &BTreeSet<Edge>, ctx: &Ctx) -> BTreeSet<Edge> {
    let mut queue: VecDeque<Edge> = admitted
        .iter()
        .filter(|e| ctx.cover.contains(e))
        .copied()
        .collect();
    let mut kept: BTreeSet<Edge> = queue.iter().copied().collect();
    while let Some(e) = queue.pop_front() {
        for p in get_precedents(g, &e) {
            if admitted.contains(&p) && kept.insert(p) {
                queue.push_back(p);
            }
        }
    }
    kept
}

fn sweep_edges(g: &CompGraph, start: i32, end: i32, dir: i32, ctx: &Ctx) -> CompGraph {
    let mut h = CompGraph::new();
    let mut prev_nodes: HashSet<CompNode> = HashSet::new();
    let mut i = start;
    loop {
        let admitted = step_up_edges(g, i, &prev_nodes, i - dir, ctx);
        let kept = step_down_edges(g, &admitted, ctx);
        prev_nodes = kept.iter().flat_map(|e| [e.init, e.term]).collect();
        for e in &kept {
            h.insert_edge(*e);
        }
        if i == end {
            return h;
        }
        i += dir;
    }
}

/// Feasible graph of `g` for the given initial nodes and final edges.
pub fn compute_feasible_graph(
    g: &CompGraph,
    initial: &BTreeSet<CompNode>,
    finals: &BTreeSet<Edge>,
) -> CompGraph {
    compute_feasible_graph_with_stats(g, initial, finals).0
}

pub fn compute_feasible_graph_with_stats(
    g: &CompGraph,
    initial: &BTreeSet<CompNode>,
    finals: &BTreeSet<Edge>,
) -> (CompGraph, FeasibleStats) {
    let mut stats = FeasibleStats::default();
    if g.is_empty() {
        return (CompGraph::new(), stats);
    }
    let finals: BTreeSet<Edge> = finals.iter().filter(|e| g.contains_edge(e)).copied().collect();
    let cover = compute_cover_edges(g, &finals);
    stats.cover_edges = cover.len();
    let ctx = Ctx {
        finals: &finals,
        initial,
        cover: &cover,
    };
    let mut h = g.without_isolated();
    loop {
        stats.iterations += 1;
        let before = h.edge_count();
        let Some((lo, hi)) = h.edge_index_range() else {
            break;
        };
        h = sweep_edges(&h, lo, hi, 1, &ctx);
        stats.sweeps += 1;
        let Some((lo, hi)) = h.edge_index_range() else {
            break;
        };
        h = sweep_edges(&h, hi, lo, -1, &ctx);
        stats.sweeps += 1;
        if h.is_empty() || h.edge_count() == before {
            break;
        }
    }
    (h, stats)
}
