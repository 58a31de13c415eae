//! Brute-force evaluations of the structural definitions.
//!
//! Every function here scans the full edge set instead of using the adjacency
//! lists or case storage. They are slow and exist to cross-check the indexed
//! primitives and the feasible-graph construction.

use std::collections::{BTreeMap, BTreeSet};

use super::node::{CompNode, Edge};
use super::store::CompGraph;

pub fn precedents_by_scan(g: &CompGraph, e: &Edge) -> BTreeSet<Edge> {
    let (u, v) = (e.init, e.term);
    g.edges()
        .filter(|f| {
            let (vp, up) = (f.init, f.term);
            v.precedent_case().is_some()
                && Some(vp.case()) == v.precedent_case()
                && up.index == u.index
                && f.dir() == -e.dir()
                && (up == u || Some(up.case()) == u.precedent_case() || u.tier > up.tier + 1)
        })
        .copied()
        .collect()
}

pub fn succedents_by_scan(g: &CompGraph, e: &Edge) -> BTreeSet<Edge> {
    let (u, v) = (e.init, e.term);
    g.edges()
        .filter(|f| {
            let (vp, up) = (f.init, f.term);
            up.precedent_case() == Some(u.case())
                && vp.index == v.index
                && (vp == v || vp.precedent_case() == Some(v.case()) || vp.tier > v.tier + 1)
        })
        .copied()
        .collect()
}

pub fn is_folding_by_scan(g: &CompGraph, v: &CompNode) -> bool {
    g.edges().any(|a| {
        a.term == *v && g.edges().any(|b| b.init == *v && b.index() == a.index())
    })
}

fn pendant_side(g: &CompGraph, e: &Edge, x: CompNode, side_index: i32) -> bool {
    let lateral = g
        .edges()
        .any(|f| f != e && f.shares_vertex(e) && f.index() == side_index);
    !lateral && !is_folding_by_scan(g, &x)
}

pub fn is_left_pendant_by_scan(g: &CompGraph, e: &Edge) -> bool {
    pendant_side(g, e, e.left(), e.index() - 1)
}

pub fn is_right_pendant_by_scan(g: &CompGraph, e: &Edge) -> bool {
    pendant_side(g, e, e.right(), e.index() + 1)
}

pub fn is_ex_pendant_by_scan(g: &CompGraph, e: &Edge) -> bool {
    is_left_pendant_by_scan(g, e) || is_right_pendant_by_scan(g, e)
}

fn extend_chains(
    g: &CompGraph,
    seed_cell: i32,
    chain: &mut Vec<Edge>,
    ends: &mut BTreeSet<Edge>,
) {
    let last = *chain.last().expect("chain is non-empty");
    ends.insert(last);
    let n = chain.len();
    if n > 1 {
        let x = last.endpoint_at(seed_cell).expect("chain edges span the seed cell");
        if !is_folding_by_scan(g, &x) {
            return;
        }
    }
    for p in precedents_by_scan(g, &last) {
        chain.push(p);
        extend_chains(g, seed_cell, chain, ends);
        chain.pop();
    }
}

/// Ceiling adjacency evaluated clause by clause, enumerating every precedent
/// chain explicitly.
pub fn ceiling_adjacent_by_definition(g: &CompGraph, e: &Edge) -> BTreeSet<Edge> {
    let mut chain_ends = BTreeSet::new();
    if is_ex_pendant_by_scan(g, e) || is_folding_by_scan(g, &e.init) {
        extend_chains(g, e.init.index, &mut vec![*e], &mut chain_ends);
    }
    g.edges()
        .filter(|f| *f != e)
        .filter(|f| {
            (f.shares_vertex(e) && f.index() == e.index() - e.dir())
                || (!is_folding_by_scan(g, &f.term)
                    && chain_ends.iter().any(|c| f.shares_vertex(c)))
        })
        .copied()
        .collect()
}

/// Edges with a backward ceiling-adjacency chain to a final edge:
/// `c_0, ..., c_k` with `c_k ∈ finals` and `c_j` ceiling-adjacent to `c_{j+1}`.
pub fn cover_by_chains(g: &CompGraph, finals: &BTreeSet<Edge>) -> BTreeSet<Edge> {
    let adj: BTreeMap<Edge, BTreeSet<Edge>> = g
        .edges()
        .map(|c| (*c, ceiling_adjacent_by_definition(g, c)))
        .collect();
    let mut cover: BTreeSet<Edge> = finals.iter().filter(|e| g.contains_edge(e)).copied().collect();
    loop {
        let add: Vec<Edge> = g
            .edges()
            .filter(|f| !cover.contains(f) && cover.iter().any(|c| adj[c].contains(f)))
            .copied()
            .collect();
        if add.is_empty() {
            return cover;
        }
        cover.extend(add);
    }
}

/// Endpoint on which a walk boundary shields `e` from pendancy: the terminal
/// of a final edge and the start of an edge leaving an initial node.
fn shielded(e: &Edge, x: CompNode, finals: &BTreeSet<Edge>, initial: &BTreeSet<CompNode>) -> bool {
    (x == e.term && finals.contains(e)) || (x == e.init && initial.contains(&e.init))
}

/// Step-pendancy. With `shield` set, an ex-pendant side whose endpoint is the
/// terminal of a final edge or an initial node does not count.
pub fn is_step_pendant_by_definition(
    g: &CompGraph,
    e: &Edge,
    finals: &BTreeSet<Edge>,
    initial: &BTreeSet<CompNode>,
    cover: &BTreeSet<Edge>,
    shield: bool,
) -> bool {
    let left = is_left_pendant_by_scan(g, e) && !(shield && shielded(e, e.left(), finals, initial));
    let right =
        is_right_pendant_by_scan(g, e) && !(shield && shielded(e, e.right(), finals, initial));
    left || right
        || (e.term.tier > 0 && precedents_by_scan(g, e).is_empty())
        || (!cover.contains(e) && succedents_by_scan(g, e).is_empty())
}

fn step_adjacency(g: &CompGraph) -> BTreeMap<Edge, BTreeSet<Edge>> {
    let mut adj: BTreeMap<Edge, BTreeSet<Edge>> = BTreeMap::new();
    for c in g.edges() {
        let mut set: BTreeSet<Edge> = g
            .edges()
            .filter(|f| *f != c && f.shares_vertex(c))
            .copied()
            .collect();
        set.extend(precedents_by_scan(g, c));
        set.extend(succedents_by_scan(g, c));
        adj.insert(*c, set);
    }
    adj
}

/// Literal fixed point `C(0) = E_O`, `C(n+1) = C(n) ∪ {e : e step-adjacent to
/// C(n) and step-pendant in G − C(n)}`. Step-adjacency is measured in `g`.
pub fn maximal_step_extended_component_oracle(
    g: &CompGraph,
    seed: &BTreeSet<Edge>,
    finals: &BTreeSet<Edge>,
    initial: &BTreeSet<CompNode>,
    cover: &BTreeSet<Edge>,
) -> BTreeSet<Edge> {
    let adj = step_adjacency(g);
    let mut comp: BTreeSet<Edge> = seed.iter().filter(|e| g.contains_edge(e)).copied().collect();
    loop {
        let rest = g.filter_edges(|e| !comp.contains(e));
        let add: Vec<Edge> = rest
            .edges()
            .filter(|e| adj[e].iter().any(|c| comp.contains(c)))
            .filter(|e| is_step_pendant_by_definition(&rest, e, finals, initial, cover, true))
            .copied()
            .collect();
        if add.is_empty() {
            return comp;
        }
        comp.extend(add);
    }
}

/// Seed set `E_O`: every edge step-pendant in `g` under walk-boundary shielding.
pub fn pendant_seed_by_definition(
    g: &CompGraph,
    finals: &BTreeSet<Edge>,
    initial: &BTreeSet<CompNode>,
    cover: &BTreeSet<Edge>,
) -> BTreeSet<Edge> {
    g.edges()
        .filter(|e| is_step_pendant_by_definition(g, e, finals, initial, cover, true))
        .copied()
        .collect()
}

/// `G` minus the maximal step-extended component of its pendant seed.
pub fn feasible_graph_by_definition(
    g: &CompGraph,
    initial: &BTreeSet<CompNode>,
    finals: &BTreeSet<Edge>,
) -> CompGraph {
    let cover = cover_by_chains(g, finals);
    let seed = pendant_seed_by_definition(g, finals, initial, &cover);
    let removed = maximal_step_extended_component_oracle(g, &seed, finals, initial, &cover);
    g.filter_edges(|e| !removed.contains(e))
}
