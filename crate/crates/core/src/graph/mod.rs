//! Computation nodes, transition cases and the dynamic computation graph.

mod io;
mod node;
mod prims;
pub mod reference;
mod store;
mod walk;

pub use io::{parse_edge_list, to_dot, to_edge_list, Naming};
pub use node::{CaseKey, CompNode, Derived, Edge};
pub use prims::{
    ceiling_adjacent_edges, get_precedents, get_succedents, is_ex_pendant, is_index_adjacent,
    is_left_pendant, is_right_pendant, succedent_nodes,
};
pub(crate) use prims::index_adjacent_with;
pub use store::{CompGraph, EdgeLists, TransitionCase};
pub use walk::{for_each_walk, walk_exists_to, Surface, Walk, WalkError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("tier {tier} node must have last state/symbol iff tier > 0")]
    TierMismatch { tier: u32 },
    #[error("edge endpoints on cells {from} and {to} are not neighbours")]
    NotNeighbours { from: i32, to: i32 },
    #[error("outgoing edges of a node must share one direction")]
    DirectionClash,
    #[error("layer mixes edge index {found} into index {expected}")]
    MixedIndex { expected: i32, found: i32 },
    #[error("graph parse error: {0}")]
    Parse(String),
}
