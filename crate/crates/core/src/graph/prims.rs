use std::collections::{BTreeSet, HashSet, VecDeque};

use super::node::{CompNode, Edge};
use super::store::CompGraph;
use super::GraphError;

/// `Prec_G(e)`: edges `(v', u')` with `v'` in the precedent case of `term(e)`,
/// `u'` on the cell of `init(e)`, and `u' = init(e)`, `u'` in the precedent case
/// of `init(e)`, or `u'` strictly more than one tier below `init(e)`.
pub fn get_precedents(g: &CompGraph, e: &Edge) -> Vec<Edge> {
    let (u, v) = (e.init, e.term);
    let Some(pk) = v.precedent_case() else {
        return Vec::new();
    };
    let u_prec = u.precedent_case();
    let mut out = Vec::new();
    for vp in g.case_members(pk) {
        for f in g.out_edges(&vp) {
            let up = f.term;
            if up.index != u.index {
                continue;
            }
            if up == u || Some(up.case()) == u_prec || u.tier > up.tier + 1 {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

/// `Succ_G(e)`, the exact dual of [`get_precedents`]: `f ∈ Succ_G(e)` iff
/// `e ∈ Prec_G(f)`.
pub fn get_succedents(g: &CompGraph, e: &Edge) -> Vec<Edge> {
    let (u, v) = (e.init, e.term);
    let own = Some((u.state, u.symbol));
    let v_case = Some(v.case());
    let mut out = Vec::new();
    for up in g.layer_nodes(u.index, u.tier + 1) {
        if up.last != own {
            continue;
        }
        for f in g.in_edges(&up) {
            let vp = f.init;
            if vp.index != v.index {
                continue;
            }
            if vp == v || vp.precedent_case() == v_case || vp.tier > v.tier + 1 {
                out.push(f);
            }
        }
    }
    out.sort();
    out
}

/// Nodes whose precedent case is the case of `v`.
pub fn succedent_nodes(g: &CompGraph, v: &CompNode) -> Vec<CompNode> {
    let own = Some((v.state, v.symbol));
    g.layer_nodes(v.index, v.tier + 1)
        .filter(|w| w.last == own)
        .collect()
}

/// No adjacent edge on the left and the left endpoint is not folding.
pub fn is_left_pendant(g: &CompGraph, e: &Edge) -> bool {
    let l = e.left();
    !g.has_left_edges(&l) && !g.is_folding(&l)
}

/// No adjacent edge on the right and the right endpoint is not folding.
pub fn is_right_pendant(g: &CompGraph, e: &Edge) -> bool {
    let r = e.right();
    !g.has_right_edges(&r) && !g.is_folding(&r)
}

pub fn is_ex_pendant(g: &CompGraph, e: &Edge) -> bool {
    is_left_pendant(g, e) || is_right_pendant(g, e)
}

/// Edges ceiling-adjacent to `e`.
///
/// `f ≠ e` qualifies when it shares a vertex with `e` and lies on the far side
/// of `init(e)` (`index(f) = index(e) - dir(e)`), or when `e` is ex-pendant or
/// starts at a folding node and `f` touches some edge of a precedent chain
/// `e = e_0, e_1, ..., e_n` with `term(f)` not folding. Chain edges strictly
/// between `e_0` and `e_n` must have a folding endpoint on the cell of `init(e)`.
pub fn ceiling_adjacent_edges(g: &CompGraph, e: &Edge) -> BTreeSet<Edge> {
    let back = e.index() - e.dir();
    let mut out: BTreeSet<Edge> = g
        .incident_edges(&e.init)
        .into_iter()
        .chain(g.incident_edges(&e.term))
        .filter(|f| f != e && f.index() == back)
        .collect();
    if !(is_ex_pendant(g, e) || g.is_folding(&e.init)) {
        return out;
    }
    let s = e.init.index;
    let mut seen = HashSet::from([*e]);
    let mut queue = VecDeque::from([*e]);
    while let Some(c) = queue.pop_front() {
        for x in [c.init, c.term] {
            out.extend(
                g.incident_edges(&x)
                    .into_iter()
                    .filter(|f| f != e && !g.is_folding(&f.term)),
            );
        }
        let x = c.endpoint_at(s).expect("chain edges span the seed cell");
        if c == *e || g.is_folding(&x) {
            for p in get_precedents(g, &c) {
                if seen.insert(p) {
                    queue.push_back(p);
                }
            }
        }
    }
    out
}

/// Index adjacency of `f` to the layer `layer` of edges with index `layer_index`.
///
/// True iff `f` shares a vertex with a layer edge, touches a node folding in `g`
/// on cell `layer_index` or `layer_index + 1`, is a final edge whose terminal lies
/// on one of those cells, or starts at an initial vertex on one of those cells.
pub fn is_index_adjacent(
    f: &Edge,
    layer: &[Edge],
    layer_index: i32,
    g: &CompGraph,
    finals: &BTreeSet<Edge>,
    initial: &BTreeSet<CompNode>,
) -> Result<bool, GraphError> {
    if let Some(bad) = layer.iter().find(|e| e.index() != layer_index) {
        return Err(GraphError::MixedIndex {
            expected: layer_index,
            found: bad.index(),
        });
    }
    let touches = |v: &CompNode| layer.iter().any(|e| e.touches(v));
    Ok(index_adjacent_with(
        f,
        layer_index,
        g,
        finals,
        initial,
        touches,
    ))
}

pub(crate) fn index_adjacent_with(
    f: &Edge,
    layer_index: i32,
    g: &CompGraph,
    finals: &BTreeSet<Edge>,
    initial: &BTreeSet<CompNode>,
    touches_layer: impl Fn(&CompNode) -> bool,
) -> bool {
    let near = |v: &CompNode| v.index == layer_index || v.index == layer_index + 1;
    if touches_layer(&f.init) || touches_layer(&f.term) {
        return true;
    }
    if [f.init, f.term].iter().any(|v| near(v) && g.is_folding(v)) {
        return true;
    }
    if near(&f.term) && finals.contains(f) {
        return true;
    }
    near(&f.init) && initial.contains(&f.init)
}
