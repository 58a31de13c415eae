//! Simulation laboratory for computation graphs of verifier Turing machines.
//!
//! Modules, bottom up:
//! - [`tm`]: machine specs, the text format, direct simulation and certificate enumeration;
//! - [`graph`]: computation nodes, transition cases, the dynamic computation graph and its primitives;
//! - [`exp`]: the exhaustive all-certificates simulator that records footmarks;
//! - [`feasible`]: cover edges and feasible-graph construction;
//! - [`verify`]: walk-existence verification by iterative pruning;
//! - [`poly`]: the boundary-expansion simulator built on walk verification;
//! - [`harness`]: random generation, differential runs, minimization and reports.

pub mod exp;
pub mod feasible;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod poly;
pub mod tm;
pub mod verify;

use serde::{Deserialize, Serialize};

/// Verdict of one engine on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    /// A step, size or work cap was hit before a decision.
    Capped,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }

    pub fn decided(self) -> Option<bool> {
        match self {
            Outcome::Yes => Some(true),
            Outcome::No => Some(false),
            Outcome::Capped => None,
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Capped => "capped",
        })
    }
}
