use std::fmt;

use serde::{Deserialize, Serialize};

/// Index into [`MachineSpec::states`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StateId(pub u16);

/// Index into [`MachineSpec::symbols`]. Input symbols come first, the blank is last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymbolId(pub u16);

/// Head movement. Stay moves are not representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn delta(self) -> i32 {
        match self {
            Dir::L => -1,
            Dir::R => 1,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::L => "L",
            Dir::R => "R",
        })
    }
}

/// Image of one `(state, symbol)` pair under the transition function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rule {
    pub write: SymbolId,
    pub dir: Dir,
    pub next: StateId,
}

/// A deterministic single-tape acceptor.
///
/// The tape alphabet is the input alphabet followed by the blank, so symbol ids
/// `0..input_len` are input symbols and `input_len` is the blank. Use
/// [`MachineSpec::new`] or the text parser to obtain a validated value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    states: Vec<String>,
    symbols: Vec<String>,
    initial: StateId,
    accept: StateId,
    reject: StateId,
    delta: Vec<Option<Rule>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("determinism violation: more than one rule for ({state}, {symbol})")]
    Determinism { state: String, symbol: String },
    #[error("invalid machine: {0}")]
    Validation(String),
    #[error("unknown {kind} `{name}` on line {line}")]
    Reference {
        kind: &'static str,
        name: String,
        line: usize,
    },
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

impl MachineSpec {
    /// Builds a machine from names and a rule list, enforcing every invariant.
    pub fn new(
        states: Vec<String>,
        input_symbols: Vec<String>,
        blank: String,
        initial: StateId,
        accept: StateId,
        reject: StateId,
        rules: &[(StateId, SymbolId, Rule)],
    ) -> Result<Self, SpecError> {
        if states.is_empty() {
            return Err(SpecError::Validation("no states".into()));
        }
        if states.len() > u16::MAX as usize || input_symbols.len() >= u16::MAX as usize {
            return Err(SpecError::Validation("too many states or symbols".into()));
        }
        if input_symbols.is_empty() {
            return Err(SpecError::Validation("empty input alphabet".into()));
        }
        for (k, s) in states.iter().enumerate() {
            if states[..k].contains(s) {
                return Err(SpecError::Validation(format!("duplicate state `{s}`")));
            }
        }
        for (k, s) in input_symbols.iter().enumerate() {
            if input_symbols[..k].contains(s) {
                return Err(SpecError::Validation(format!("duplicate symbol `{s}`")));
            }
        }
        if input_symbols.contains(&blank) {
            return Err(SpecError::Validation(format!(
                "blank `{blank}` must not be an input symbol"
            )));
        }
        let nq = states.len();
        for id in [initial, accept, reject] {
            if id.0 as usize >= nq {
                return Err(SpecError::Validation(format!("state id {} out of range", id.0)));
            }
        }
        if accept == reject {
            return Err(SpecError::Validation(
                "accept and reject states must differ".into(),
            ));
        }
        let mut symbols = input_symbols;
        symbols.push(blank);
        let ng = symbols.len();
        let mut delta = vec![None; nq * ng];
        for &(q, s, rule) in rules {
            if q.0 as usize >= nq || rule.next.0 as usize >= nq {
                return Err(SpecError::Validation("rule state id out of range".into()));
            }
            if s.0 as usize >= ng || rule.write.0 as usize >= ng {
                return Err(SpecError::Validation("rule symbol id out of range".into()));
            }
            if q == accept || q == reject {
                return Err(SpecError::Validation(format!(
                    "rule from final state `{}`",
                    states[q.0 as usize]
                )));
            }
            let slot = &mut delta[q.0 as usize * ng + s.0 as usize];
            if slot.is_some() {
                return Err(SpecError::Determinism {
                    state: states[q.0 as usize].clone(),
                    symbol: symbols[s.0 as usize].clone(),
                });
            }
            *slot = Some(rule);
        }
        Ok(MachineSpec {
            states,
            symbols,
            initial,
            accept,
            reject,
            delta,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    /// Tape alphabet names, input symbols first and blank last.
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// |Γ|, blank included.
    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    /// |Σ|.
    pub fn input_len(&self) -> usize {
        self.symbols.len() - 1
    }

    pub fn blank(&self) -> SymbolId {
        SymbolId((self.symbols.len() - 1) as u16)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accept(&self) -> StateId {
        self.accept
    }

    pub fn reject(&self) -> StateId {
        self.reject
    }

    pub fn is_final(&self, q: StateId) -> bool {
        q == self.accept || q == self.reject
    }

    pub fn is_input_symbol(&self, s: SymbolId) -> bool {
        (s.0 as usize) < self.input_len()
    }

    /// Tape alphabet ids in branching order (alphabet order, blank last).
    pub fn tape_alphabet(&self) -> impl Iterator<Item = SymbolId> {
        (0..self.symbols.len() as u16).map(SymbolId)
    }

    pub fn rule(&self, q: StateId, s: SymbolId) -> Option<Rule> {
        self.delta
            .get(q.0 as usize * self.symbols.len() + s.0 as usize)
            .copied()
            .flatten()
    }

    /// All defined rules in (state, symbol) order.
    pub fn rules(&self) -> impl Iterator<Item = (StateId, SymbolId, Rule)> + '_ {
        let ng = self.symbols.len();
        self.delta.iter().enumerate().filter_map(move |(k, r)| {
            r.map(|r| (StateId((k / ng) as u16), SymbolId((k % ng) as u16), r))
        })
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q.0 as usize]
    }

    pub fn symbol_name(&self, s: SymbolId) -> &str {
        &self.symbols[s.0 as usize]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|k| StateId(k as u16))
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|k| SymbolId(k as u16))
    }

    /// Parses an instance string. Single-character alphabets are read character by
    /// character; otherwise symbols must be separated by whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Vec<SymbolId>, SpecError> {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let tokens: Vec<String> = if single && !text.contains(char::is_whitespace) {
            text.chars().map(|c| c.to_string()).collect()
        } else {
            text.split_whitespace().map(str::to_string).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.symbol_id(t).ok_or_else(|| SpecError::Reference {
                    kind: "symbol",
                    name: t.clone(),
                    line: 0,
                })
            })
            .collect()
    }

    pub fn format_word(&self, word: &[SymbolId]) -> String {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&s| self.symbol_name(s)).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub(crate) fn input_symbols(&self) -> Vec<String> {
        self.symbols[..self.input_len()].to_vec()
    }
}
