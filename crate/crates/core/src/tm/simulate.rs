use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{CompNode, Edge, Surface, Walk};
use crate::Outcome;

use super::machine::{MachineSpec, StateId, SymbolId};

/// Result of one deterministic run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub final_state: StateId,
    pub walk: Walk,
    pub steps: usize,
    /// `false` when the step cap stopped the run.
    pub halted: bool,
}

impl RunResult {
    pub fn accepted(&self, spec: &MachineSpec) -> bool {
        self.halted && self.final_state == spec.accept()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("machine stuck in state {state:?} reading {symbol:?} after {steps} steps")]
    Stuck {
        state: StateId,
        symbol: SymbolId,
        steps: usize,
    },
    #[error("input symbol {0:?} is not in the input alphabet")]
    BadInput(SymbolId),
}

/// `10 * (|L| + m)^2`, with `|L| + m` floored at 1.
pub fn default_step_cap(len: usize, m: usize) -> usize {
    let n = (len + m).max(1);
    10 * n * n
}

/// Node reached from `v` given the latest node per cell.
///
/// On a revisit the new node sits one tier above the surface node and reads what
/// that node wrote; a first visit lands on tier 0 reading `fresh(i')`.
pub(crate) fn next_node(
    spec: &MachineSpec,
    surface: &BTreeMap<i32, CompNode>,
    v: &CompNode,
    fresh: impl FnOnce(i32) -> SymbolId,
) -> Option<CompNode> {
    let d = v.derived(spec)?;
    let i = d.next_index;
    Some(match surface.get(&i) {
        Some(p) => {
            let pd = p.derived(spec).expect("surface nodes have left their cell");
            CompNode {
                index: i,
                tier: p.tier + 1,
                state: d.next_state,
                symbol: pd.output,
                last: Some((p.state, p.symbol)),
            }
        }
        None => CompNode::floor(i, d.next_state, fresh(i)),
    })
}

pub(crate) fn surface_of(nodes: &BTreeMap<i32, CompNode>) -> Surface {
    let mut s = Surface::default();
    for v in nodes.values() {
        s.record(v);
    }
    s
}

/// Runs the machine on an arbitrary tape word (blank allowed).
pub fn simulate_tape(
    spec: &MachineSpec,
    tape: &[SymbolId],
    step_cap: usize,
) -> Result<RunResult, SimError> {
    let blank = spec.blank();
    let cell = |i: i32| -> SymbolId {
        if i >= 0 && (i as usize) < tape.len() {
            tape[i as usize]
        } else {
            blank
        }
    };
    let mut v = CompNode::floor(0, spec.initial(), cell(0));
    let mut surface = BTreeMap::new();
    let mut edges = Vec::new();
    let halted = loop {
        if spec.is_final(v.state) {
            break true;
        }
        if edges.len() >= step_cap {
            break false;
        }
        let Some(w) = next_node(spec, &surface, &v, cell) else {
            return Err(SimError::Stuck {
                state: v.state,
                symbol: v.symbol,
                steps: edges.len(),
            });
        };
        edges.push(Edge { init: v, term: w });
        surface.insert(v.index, v);
        v = w;
    };
    surface.insert(v.index, v);
    Ok(RunResult {
        final_state: v.state,
        steps: edges.len(),
        walk: Walk {
            edges,
            surface: surface_of(&surface),
        },
        halted,
    })
}

/// Runs the machine on an input word over the input alphabet.
pub fn simulate_dtm(
    spec: &MachineSpec,
    input: &[SymbolId],
    step_cap: usize,
) -> Result<RunResult, SimError> {
    if let Some(&bad) = input.iter().find(|s| !spec.is_input_symbol(**s)) {
        return Err(SimError::BadInput(bad));
    }
    simulate_tape(spec, input, step_cap)
}

/// Outcome of the syntactic certificate precheck.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precheck {
    Pass,
    Reject(&'static str),
}

/// Rejects unless `word` holds exactly one delimiter followed by a non-empty
/// suffix over `cert_alphabet`.
pub fn sanitize_certificate_input(
    word: &[SymbolId],
    delimiter: SymbolId,
    cert_alphabet: &[SymbolId],
) -> Precheck {
    let mut hits = word.iter().enumerate().filter(|(_, s)| **s == delimiter);
    let Some((pos, _)) = hits.next() else {
        return Precheck::Reject("no delimiter");
    };
    if hits.next().is_some() {
        return Precheck::Reject("more than one delimiter");
    }
    let suffix = &word[pos + 1..];
    if suffix.is_empty() {
        return Precheck::Reject("empty certificate");
    }
    if suffix.iter().any(|s| !cert_alphabet.contains(s)) {
        return Precheck::Reject("certificate symbol outside the certificate alphabet");
    }
    Precheck::Pass
}

/// Per-certificate sweep result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectResult {
    pub outcome: Outcome,
    pub accepting: Vec<Vec<SymbolId>>,
    pub rejected: usize,
    pub stuck: usize,
    pub capped: usize,
}

/// Calls `f` on every word of length `m` over the tape alphabet, in
/// lexicographic order with the blank last.
pub fn for_each_certificate(spec: &MachineSpec, m: usize, mut f: impl FnMut(&[SymbolId])) {
    let n = spec.num_symbols() as u16;
    let mut y = vec![SymbolId(0); m];
    loop {
        f(&y);
        let mut k = m;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if y[k].0 + 1 < n {
                y[k].0 += 1;
                break;
            }
            y[k] = SymbolId(0);
        }
    }
}

/// Runs `L ∘ y` for every certificate `y ∈ Γ^m`; `Yes` iff some run accepts.
///
/// Stuck runs count as non-accepting. Without an acceptance, any capped run
/// makes the outcome `Capped`.
pub fn enumerate_certificates_direct(
    spec: &MachineSpec,
    instance: &[SymbolId],
    m: usize,
    step_cap: usize,
) -> DirectResult {
    let mut res = DirectResult {
        outcome: Outcome::No,
        accepting: Vec::new(),
        rejected: 0,
        stuck: 0,
        capped: 0,
    };
    let mut tape = instance.to_vec();
    for_each_certificate(spec, m, |y| {
        tape.truncate(instance.len());
        tape.extend_from_slice(y);
        match simulate_tape(spec, &tape, step_cap) {
            Ok(r) if !r.halted => res.capped += 1,
            Ok(r) if r.final_state == spec.accept() => res.accepting.push(y.to_vec()),
            Ok(_) => res.rejected += 1,
            Err(_) => res.stuck += 1,
        }
    });
    res.outcome = if !res.accepting.is_empty() {
        Outcome::Yes
    } else if res.capped > 0 {
        Outcome::Capped
    } else {
        Outcome::No
    };
    res
}
