use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tm::{Dir, MachineSpec, StateId, SymbolId};

use super::GraphError;

/// A computation node `(index, state, symbol, last_state, last_symbol, tier)`.
///
/// `last` is `None` exactly on tier 0. Nodes are plain values, so equality of
/// the tuple is node identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CompNode {
    pub index: i32,
    pub tier: u32,
    pub state: StateId,
    pub symbol: SymbolId,
    pub last: Option<(StateId, SymbolId)>,
}

/// Key of a transition case `V_{i,t}^{q,s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CaseKey {
    pub index: i32,
    pub tier: u32,
    pub state: StateId,
    pub symbol: SymbolId,
}

/// Fields a node inherits from the transition function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Derived {
    pub next_state: StateId,
    pub output: SymbolId,
    pub next_index: i32,
    pub dir: Dir,
}

impl CompNode {
    pub fn new(
        index: i32,
        tier: u32,
        state: StateId,
        symbol: SymbolId,
        last: Option<(StateId, SymbolId)>,
    ) -> Result<Self, GraphError> {
        if (tier == 0) != last.is_none() {
            return Err(GraphError::TierMismatch { tier });
        }
        Ok(CompNode {
            index,
            tier,
            state,
            symbol,
            last,
        })
    }

    pub fn floor(index: i32, state: StateId, symbol: SymbolId) -> Self {
        CompNode {
            index,
            tier: 0,
            state,
            symbol,
            last: None,
        }
    }

    pub fn case(&self) -> CaseKey {
        CaseKey {
            index: self.index,
            tier: self.tier,
            state: self.state,
            symbol: self.symbol,
        }
    }

    /// The precedent transition case, `None` on tier 0.
    pub fn precedent_case(&self) -> Option<CaseKey> {
        self.last.map(|(q, s)| CaseKey {
            index: self.index,
            tier: self.tier - 1,
            state: q,
            symbol: s,
        })
    }

    /// `δ`-derived fields; `None` for final or stuck nodes.
    pub fn derived(&self, spec: &MachineSpec) -> Option<Derived> {
        if spec.is_final(self.state) {
            return None;
        }
        spec.rule(self.state, self.symbol).map(|r| Derived {
            next_state: r.next,
            output: r.write,
            next_index: self.index + r.dir.delta(),
            dir: r.dir,
        })
    }
}

impl CaseKey {
    pub fn derived(&self, spec: &MachineSpec) -> Option<Derived> {
        CompNode::floor(self.index, self.state, self.symbol).derived(spec)
    }
}

/// A directed edge between nodes on neighbouring cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub init: CompNode,
    pub term: CompNode,
}

impl Edge {
    pub fn new(init: CompNode, term: CompNode) -> Result<Self, GraphError> {
        if (term.index - init.index).abs() != 1 {
            return Err(GraphError::NotNeighbours {
                from: init.index,
                to: term.index,
            });
        }
        Ok(Edge { init, term })
    }

    /// `min(index(init), index(term))`.
    pub fn index(&self) -> i32 {
        self.init.index.min(self.term.index)
    }

    /// `index(term) - index(init)`, either -1 or +1.
    pub fn dir(&self) -> i32 {
        self.term.index - self.init.index
    }

    /// Endpoint at the edge index.
    pub fn left(&self) -> CompNode {
        if self.dir() > 0 {
            self.init
        } else {
            self.term
        }
    }

    /// Endpoint at the edge index plus one.
    pub fn right(&self) -> CompNode {
        if self.dir() > 0 {
            self.term
        } else {
            self.init
        }
    }

    /// Endpoint lying on the given cell, if any.
    pub fn endpoint_at(&self, index: i32) -> Option<CompNode> {
        if self.init.index == index {
            Some(self.init)
        } else if self.term.index == index {
            Some(self.term)
        } else {
            None
        }
    }

    pub fn touches(&self, v: &CompNode) -> bool {
        self.init == *v || self.term == *v
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(&other.init) || self.touches(&other.term)
    }

    /// Canonical order key: (index, tier, state, symbol, dir) of the initial node,
    /// then the remaining fields to make the order total.
    fn key(&self) -> (i32, u32, StateId, SymbolId, i32, CompNode, CompNode) {
        (
            self.index(),
            self.init.tier,
            self.init.state,
            self.init.symbol,
            self.dir(),
            self.init,
            self.term,
        )
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CompNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.last {
            Some((q, s)) => write!(
                f,
                "({},{},{},{},{},{})",
                self.index, self.tier, self.state.0, self.symbol.0, q.0, s.0
            ),
            None => write!(
                f,
                "({},{},{},{},-,-)",
                self.index, self.tier, self.state.0, self.symbol.0
            ),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.init, self.term)
    }
}
