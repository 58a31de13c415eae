use std::collections::{BTreeMap, BTreeSet};

use crate::tm::{StateId, SymbolId};

use super::node::{CaseKey, CompNode, Edge};
use super::GraphError;

/// Growable array addressed by a signed cell index.
#[derive(Clone, Debug, Default)]
struct OffsetVec<T> {
    offset: i32,
    items: Vec<T>,
}

impl<T: Default> OffsetVec<T> {
    fn get(&self, i: i32) -> Option<&T> {
        let k = i.checked_sub(self.offset)?;
        if k < 0 {
            return None;
        }
        self.items.get(k as usize)
    }

    fn get_mut(&mut self, i: i32) -> Option<&mut T> {
        let k = i.checked_sub(self.offset)?;
        if k < 0 {
            return None;
        }
        self.items.get_mut(k as usize)
    }

    fn slot(&mut self, i: i32) -> &mut T {
        if self.items.is_empty() {
            self.offset = i;
        }
        if i < self.offset {
            let grow = (self.offset - i) as usize;
            let mut front: Vec<T> = (0..grow).map(|_| T::default()).collect();
            front.append(&mut self.items);
            self.items = front;
            self.offset = i;
        }
        let k = (i - self.offset) as usize;
        if k >= self.items.len() {
            self.items.resize_with(k + 1, T::default);
        }
        &mut self.items[k]
    }

    fn iter(&self) -> impl Iterator<Item = (i32, &T)> {
        self.items
            .iter()
            .enumerate()
            .map(move |(k, t)| (self.offset + k as i32, t))
    }
}

/// The four directional neighbour lists of one node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeLists {
    pub left_incoming: Vec<CompNode>,
    pub left_outgoing: Vec<CompNode>,
    pub right_incoming: Vec<CompNode>,
    pub right_outgoing: Vec<CompNode>,
}

impl EdgeLists {
    fn is_empty(&self) -> bool {
        self.left_incoming.is_empty()
            && self.left_outgoing.is_empty()
            && self.right_incoming.is_empty()
            && self.right_outgoing.is_empty()
    }
}

/// Nodes of one `V_{i,t}^{q,s}` keyed by `(last_state, last_symbol)`.
#[derive(Clone, Debug, Default)]
pub struct TransitionCase {
    members: BTreeMap<Option<(StateId, SymbolId)>, EdgeLists>,
}

impl TransitionCase {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

type TierRow = Vec<BTreeMap<(StateId, SymbolId), TransitionCase>>;

/// Dynamic computation graph: index → tier → (state, symbol) → case → node.
#[derive(Clone, Debug, Default)]
pub struct CompGraph {
    layers: OffsetVec<TierRow>,
    edges: BTreeMap<i32, BTreeSet<Edge>>,
    edge_count: usize,
    node_count: usize,
}

impl PartialEq for CompGraph {
    fn eq(&self, other: &Self) -> bool {
        self.edge_count == other.edge_count
            && self.node_count == other.node_count
            && self.edges().eq(other.edges())
            && self.nodes().eq(other.nodes())
    }
}

impl Eq for CompGraph {}

impl CompGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph holding exactly the given edges and their endpoints.
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> Self {
        let mut g = CompGraph::new();
        for e in edges {
            g.insert_edge(*e);
        }
        g
    }

    fn case_mut(&mut self, key: CaseKey) -> &mut TransitionCase {
        let row = self.layers.slot(key.index);
        let t = key.tier as usize;
        if row.len() <= t {
            row.resize_with(t + 1, BTreeMap::new);
        }
        row[t].entry((key.state, key.symbol)).or_default()
    }

    fn case_ref(&self, key: CaseKey) -> Option<&TransitionCase> {
        self.layers
            .get(key.index)?
            .get(key.tier as usize)?
            .get(&(key.state, key.symbol))
    }

    fn lists(&self, v: &CompNode) -> Option<&EdgeLists> {
        self.case_ref(v.case())?.members.get(&v.last)
    }

    fn lists_mut(&mut self, v: &CompNode) -> Option<&mut EdgeLists> {
        self.layers
            .get_mut(v.index)?
            .get_mut(v.tier as usize)?
            .get_mut(&(v.state, v.symbol))?
            .members
            .get_mut(&v.last)
    }

    /// Inserts the node if absent and returns it.
    pub fn get_or_create_node(&mut self, v: CompNode) -> Result<CompNode, GraphError> {
        CompNode::new(v.index, v.tier, v.state, v.symbol, v.last)?;
        self.insert_node(v);
        Ok(v)
    }

    fn insert_node(&mut self, v: CompNode) {
        let case = self.case_mut(v.case());
        if let std::collections::btree_map::Entry::Vacant(slot) = case.members.entry(v.last) {
            slot.insert(EdgeLists::default());
            self.node_count += 1;
        }
    }

    pub fn contains_node(&self, v: &CompNode) -> bool {
        self.lists(v).is_some()
    }

    /// Materializes (possibly empty) case storage and returns the key; `None` on tier 0.
    pub fn precedent_of_node(&mut self, v: &CompNode) -> Option<CaseKey> {
        let key = v.precedent_case()?;
        self.case_mut(key);
        Some(key)
    }

    /// Adds `u -> v`. Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: CompNode, v: CompNode) -> Result<bool, GraphError> {
        let e = Edge::new(u, v)?;
        CompNode::new(u.index, u.tier, u.state, u.symbol, u.last)?;
        CompNode::new(v.index, v.tier, v.state, v.symbol, v.last)?;
        if let Some(l) = self.lists(&u) {
            let clash = if e.dir() > 0 {
                !l.left_outgoing.is_empty()
            } else {
                !l.right_outgoing.is_empty()
            };
            if clash {
                return Err(GraphError::DirectionClash);
            }
        }
        Ok(self.insert_edge(e))
    }

    pub(crate) fn insert_edge(&mut self, e: Edge) -> bool {
        if self.contains_edge(&e) {
            return false;
        }
        self.insert_node(e.init);
        self.insert_node(e.term);
        let right = e.dir() > 0;
        let lu = self.lists_mut(&e.init).expect("init present");
        if right {
            lu.right_outgoing.push(e.term);
        } else {
            lu.left_outgoing.push(e.term);
        }
        let lv = self.lists_mut(&e.term).expect("term present");
        if right {
            lv.left_incoming.push(e.init);
        } else {
            lv.right_incoming.push(e.init);
        }
        self.edges.entry(e.index()).or_default().insert(e);
        self.edge_count += 1;
        true
    }

    /// Removes an edge, keeping its endpoints. Returns `false` if it was absent.
    pub fn remove_edge(&mut self, e: &Edge) -> bool {
        let idx = e.index();
        let Some(set) = self.edges.get_mut(&idx) else {
            return false;
        };
        if !set.remove(e) {
            return false;
        }
        if set.is_empty() {
            self.edges.remove(&idx);
        }
        let right = e.dir() > 0;
        let lu = self.lists_mut(&e.init).expect("init present");
        let out = if right {
            &mut lu.right_outgoing
        } else {
            &mut lu.left_outgoing
        };
        out.retain(|w| *w != e.term);
        let lv = self.lists_mut(&e.term).expect("term present");
        let inc = if right {
            &mut lv.left_incoming
        } else {
            &mut lv.right_incoming
        };
        inc.retain(|w| *w != e.init);
        self.edge_count -= 1;
        true
    }

    /// Removes a node that has no incident edges.
    pub fn remove_isolated_node(&mut self, v: &CompNode) -> bool {
        match self.lists(v) {
            Some(l) if l.is_empty() => {}
            _ => return false,
        }
        let removed = self
            .layers
            .get_mut(v.index)
            .and_then(|row| row.get_mut(v.tier as usize))
            .and_then(|m| m.get_mut(&(v.state, v.symbol)))
            .and_then(|c| c.members.remove(&v.last))
            .is_some();
        if removed {
            self.node_count -= 1;
        }
        removed
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges
            .get(&e.index())
            .is_some_and(|s| s.contains(e))
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values().flat_map(|s| s.iter())
    }

    /// Edges with the given edge index, in canonical order.
    pub fn edges_at(&self, index: i32) -> impl Iterator<Item = &Edge> {
        self.edges.get(&index).into_iter().flat_map(|s| s.iter())
    }

    /// Smallest and largest edge index.
    pub fn edge_index_range(&self) -> Option<(i32, i32)> {
        let lo = *self.edges.keys().next()?;
        let hi = *self.edges.keys().next_back()?;
        Some((lo, hi))
    }

    /// Nodes in `CompNode` order.
    pub fn nodes(&self) -> impl Iterator<Item = CompNode> + '_ {
        self.layers.iter().flat_map(|(i, row)| {
            row.iter().enumerate().flat_map(move |(t, cases)| {
                cases.iter().flat_map(move |(&(q, s), case)| {
                    case.members.keys().map(move |&last| CompNode {
                        index: i,
                        tier: t as u32,
                        state: q,
                        symbol: s,
                        last,
                    })
                })
            })
        })
    }

    /// Nodes present in the given transition case.
    pub fn case_members(&self, key: CaseKey) -> impl Iterator<Item = CompNode> + '_ {
        self.case_ref(key)
            .into_iter()
            .flat_map(move |c| {
                c.members.keys().map(move |&last| CompNode {
                    index: key.index,
                    tier: key.tier,
                    state: key.state,
                    symbol: key.symbol,
                    last,
                })
            })
    }

    /// Nodes at cell `index` and the given tier.
    pub fn layer_nodes(&self, index: i32, tier: u32) -> impl Iterator<Item = CompNode> + '_ {
        self.layers
            .get(index)
            .and_then(|row| row.get(tier as usize))
            .into_iter()
            .flat_map(move |cases| {
                cases.iter().flat_map(move |(&(q, s), case)| {
                    case.members.keys().map(move |&last| CompNode {
                        index,
                        tier,
                        state: q,
                        symbol: s,
                        last,
                    })
                })
            })
    }

    /// Largest tier of any node present at `index`.
    pub fn max_tier_at(&self, index: i32) -> Option<u32> {
        let row = self.layers.get(index)?;
        row.iter()
            .enumerate()
            .rev()
            .find(|(_, cases)| cases.values().any(|c| !c.members.is_empty()))
            .map(|(t, _)| t as u32)
    }

    pub fn edge_lists(&self, v: &CompNode) -> Option<&EdgeLists> {
        self.lists(v)
    }

    pub fn out_edges(&self, v: &CompNode) -> Vec<Edge> {
        let Some(l) = self.lists(v) else {
            return Vec::new();
        };
        let mut out: Vec<Edge> = l
            .left_outgoing
            .iter()
            .chain(&l.right_outgoing)
            .map(|&w| Edge { init: *v, term: w })
            .collect();
        out.sort();
        out
    }

    pub fn in_edges(&self, v: &CompNode) -> Vec<Edge> {
        let Some(l) = self.lists(v) else {
            return Vec::new();
        };
        let mut out: Vec<Edge> = l
            .left_incoming
            .iter()
            .chain(&l.right_incoming)
            .map(|&u| Edge { init: u, term: *v })
            .collect();
        out.sort();
        out
    }

    /// All edges touching `v`.
    pub fn incident_edges(&self, v: &CompNode) -> Vec<Edge> {
        let mut out = self.in_edges(v);
        out.extend(self.out_edges(v));
        out
    }

    pub fn in_degree(&self, v: &CompNode) -> usize {
        self.lists(v)
            .map_or(0, |l| l.left_incoming.len() + l.right_incoming.len())
    }

    pub fn out_degree(&self, v: &CompNode) -> usize {
        self.lists(v)
            .map_or(0, |l| l.left_outgoing.len() + l.right_outgoing.len())
    }

    /// Some incoming and some outgoing edge at `v` share an edge index.
    pub fn is_folding(&self, v: &CompNode) -> bool {
        self.lists(v).is_some_and(|l| {
            (!l.left_incoming.is_empty() && !l.left_outgoing.is_empty())
                || (!l.right_incoming.is_empty() && !l.right_outgoing.is_empty())
        })
    }

    /// Whether `v` has any edge towards `index(v) - 1`.
    pub fn has_left_edges(&self, v: &CompNode) -> bool {
        self.lists(v)
            .is_some_and(|l| !l.left_incoming.is_empty() || !l.left_outgoing.is_empty())
    }

    /// Whether `v` has any edge towards `index(v) + 1`.
    pub fn has_right_edges(&self, v: &CompNode) -> bool {
        self.lists(v)
            .is_some_and(|l| !l.right_incoming.is_empty() || !l.right_outgoing.is_empty())
    }

    /// Number of distinct cell indices carrying a node.
    pub fn width(&self) -> usize {
        self.layers
            .iter()
            .filter(|(_, row)| row.iter().any(|c| c.values().any(|c| !c.members.is_empty())))
            .count()
    }

    /// Largest tier of any node (0 for an empty graph).
    pub fn height(&self) -> u32 {
        self.nodes().map(|v| v.tier).max().unwrap_or(0)
    }

    /// Largest number of nodes sharing one cell index.
    pub fn layer_height(&self) -> usize {
        self.layers
            .iter()
            .map(|(_, row)| {
                row.iter()
                    .flat_map(|c| c.values())
                    .map(|c| c.members.len())
                    .sum::<usize>()
            })
            .max()
            .unwrap_or(0)
    }

    /// Subgraph on the edges satisfying `keep`, with no isolated nodes.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> CompGraph {
        let mut g = CompGraph::new();
        for e in self.edges() {
            if keep(e) {
                g.insert_edge(*e);
            }
        }
        g
    }

    /// Copy of the graph with degree-0 nodes dropped.
    pub fn without_isolated(&self) -> CompGraph {
        CompGraph::from_edges(self.edges())
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().copied().collect()
    }
}
