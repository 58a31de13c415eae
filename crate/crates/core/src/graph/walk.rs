use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::node::{CaseKey, CompNode, Edge};
use super::store::CompGraph;

/// Latest transition case per cell along a walk.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    cases: BTreeMap<i32, CaseKey>,
}

impl Surface {
    pub fn get(&self, index: i32) -> Option<CaseKey> {
        self.cases.get(&index).copied()
    }

    /// Records `v` as the latest node on its cell.
    pub fn record(&mut self, v: &CompNode) {
        self.cases.insert(v.index, v.case());
    }

    /// Whether a walk with this surface may step onto `w`.
    pub fn admits(&self, w: &CompNode) -> bool {
        match self.cases.get(&w.index) {
            Some(k) => w.precedent_case() == Some(*k),
            None => w.tier == 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, CaseKey)> + '_ {
        self.cases.iter().map(|(&i, &k)| (i, k))
    }
}

/// An edge sequence with its final surface. The surface includes the final node.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Walk {
    pub edges: Vec<Edge>,
    pub surface: Surface,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("edge {0} does not continue the walk")]
    Broken(usize),
    #[error("node repeated at edge {0}")]
    Repeated(usize),
    #[error("edge {0} is not surface consistent")]
    Surface(usize),
}

impl Walk {
    /// Rebuilds the surface of an edge sequence, checking every walk invariant.
    pub fn from_edges(edges: Vec<Edge>) -> Result<Self, WalkError> {
        let mut surface = Surface::default();
        let mut seen = HashSet::new();
        if let Some(first) = edges.first() {
            if !surface.admits(&first.init) {
                return Err(WalkError::Surface(0));
            }
            seen.insert(first.init);
        }
        for (k, e) in edges.iter().enumerate() {
            if k > 0 && edges[k - 1].term != e.init {
                return Err(WalkError::Broken(k));
            }
            surface.record(&e.init);
            if !surface.admits(&e.term) {
                return Err(WalkError::Surface(k));
            }
            if !seen.insert(e.term) {
                return Err(WalkError::Repeated(k));
            }
        }
        if let Some(last) = edges.last() {
            surface.record(&last.term);
        }
        Ok(Walk { edges, surface })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> Option<CompNode> {
        self.edges.first().map(|e| e.init)
    }

    pub fn last_edge(&self) -> Option<Edge> {
        self.edges.last().copied()
    }

    pub fn nodes(&self) -> Vec<CompNode> {
        let mut out: Vec<CompNode> = self.edges.first().map(|e| e.init).into_iter().collect();
        out.extend(self.edges.iter().map(|e| e.term));
        out
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    /// Last edge of the walk on every edge index.
    pub fn ceiling_edges(&self) -> BTreeSet<Edge> {
        let mut last = BTreeMap::new();
        for e in &self.edges {
            last.insert(e.index(), *e);
        }
        last.into_values().collect()
    }

    /// First edge of the walk on every edge index.
    pub fn floor_edges(&self) -> BTreeSet<Edge> {
        let mut first = BTreeMap::new();
        for e in &self.edges {
            first.entry(e.index()).or_insert(*e);
        }
        first.into_values().collect()
    }
}

/// Calls `visit` on every surface-consistent walk from `initial` in `g`
/// (every prefix included). `visit` returns `false` to stop the search.
pub fn for_each_walk(
    g: &CompGraph,
    initial: &BTreeSet<CompNode>,
    mut visit: impl FnMut(&[Edge]) -> bool,
) {
    fn go(
        g: &CompGraph,
        at: CompNode,
        surface: &mut Surface,
        path: &mut Vec<Edge>,
        visit: &mut dyn FnMut(&[Edge]) -> bool,
    ) -> bool {
        for e in g.out_edges(&at) {
            if !surface.admits(&e.term) {
                continue;
            }
            let saved = surface.get(at.index);
            surface.record(&at);
            path.push(e);
            let keep_going = visit(path) && go(g, e.term, surface, path, visit);
            path.pop();
            match saved {
                Some(k) => {
                    surface.cases.insert(at.index, k);
                }
                None => {
                    surface.cases.remove(&at.index);
                }
            }
            if !keep_going {
                return false;
            }
        }
        true
    }
    for v in initial {
        if v.tier != 0 || !g.contains_node(v) {
            continue;
        }
        let mut surface = Surface::default();
        let mut path = Vec::new();
        if !go(g, *v, &mut surface, &mut path, &mut visit) {
            return;
        }
    }
}

/// Whether a surface-consistent walk from `initial` ends with `target`.
pub fn walk_exists_to(g: &CompGraph, initial: &BTreeSet<CompNode>, target: &Edge) -> bool {
    if !g.contains_edge(target) {
        return false;
    }
    let mut found = false;
    for_each_walk(g, initial, |path| {
        if path.last() == Some(target) {
            found = true;
        }
        !found
    });
    found
}
