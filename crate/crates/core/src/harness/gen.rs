//! Seeded random machines and instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::tm::{to_text, Dir, MachineSpec, Rule, StateId, SymbolId};

/// Size limits for generated cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest number of states, accept and reject included (at least 3).
    pub states: usize,
    /// Largest input alphabet.
    pub symbols: usize,
    /// Largest instance length (at least 1).
    pub max_len: usize,
    /// Largest certificate length.
    pub max_m: usize,
    /// Ceiling on the step cap, which otherwise defaults to `10 (|L| + m)^2`.
    pub max_step_cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            states: 6,
            symbols: 3,
            max_len: 8,
            max_m: 5,
            max_step_cap: 400,
        }
    }
}

impl Bounds {
    /// Parses `key=value` pairs separated by commas, starting from the
    /// defaults. Keys: `states`, `symbols`, `len`, `m`, `cap`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut b = Bounds::default();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let v: usize = v.trim().parse().map_err(|e| format!("{k}: {e}"))?;
            match k.trim() {
                "states" => b.states = v,
                "symbols" => b.symbols = v,
                "len" => b.max_len = v,
                "m" => b.max_m = v,
                "cap" => b.max_step_cap = v,
                other => return Err(format!("unknown bound `{other}`")),
            }
        }
        if b.states < 3 {
            return Err("states must be at least 3".into());
        }
        Ok(b)
    }
}

/// One generated input to the differential run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceCase {
    pub seed: u64,
    /// Machine in the text format.
    pub machine: String,
    /// Instance as space-free symbol names.
    pub instance: String,
    pub m: usize,
    pub step_cap: usize,
}

const SYMBOL_NAMES: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h"];

/// Total machine with `k` working states `q0..`, plus `qacc` and `qrej`,
/// where `k + 2` is at most `bounds.states`.
///
/// Every working state has a rule for every tape symbol, with write symbol,
/// direction and next state drawn uniformly.
pub fn generate_random_machine(rng: &mut impl Rng, bounds: &Bounds) -> MachineSpec {
    let k = rng.gen_range(1..=bounds.states.max(3) - 2);
    let n = rng.gen_range(1..=bounds.symbols.clamp(1, SYMBOL_NAMES.len()));
    let mut states: Vec<String> = (0..k).map(|i| format!("q{i}")).collect();
    states.push("qacc".into());
    states.push("qrej".into());
    let input: Vec<String> = SYMBOL_NAMES[..n].iter().map(|s| s.to_string()).collect();
    let ng = n + 1;
    let nq = k + 2;
    let mut rules = Vec::with_capacity(k * ng);
    for q in 0..k {
        for s in 0..ng {
            rules.push((
                StateId(q as u16),
                SymbolId(s as u16),
                Rule {
                    write: SymbolId(rng.gen_range(0..ng) as u16),
                    dir: *[Dir::L, Dir::R].choose(rng).unwrap(),
                    next: StateId(rng.gen_range(0..nq) as u16),
                },
            ));
        }
    }
    MachineSpec::new(
        states,
        input,
        "_".into(),
        StateId(0),
        StateId(k as u16),
        StateId(k as u16 + 1),
        &rules,
    )
    .expect("generated machine is valid")
}

/// Deterministic case for `seed`.
pub fn random_case(seed: u64, bounds: &Bounds) -> InstanceCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = generate_random_machine(&mut rng, bounds);
    let len = rng.gen_range(1..=bounds.max_len.max(1));
    let word: Vec<SymbolId> = (0..len)
        .map(|_| SymbolId(rng.gen_range(0..spec.input_len()) as u16))
        .collect();
    let m = rng.gen_range(0..=bounds.max_m);
    let step_cap = crate::tm::default_step_cap(len, m).min(bounds.max_step_cap);
    InstanceCase {
        seed,
        machine: to_text(&spec),
        instance: spec.format_word(&word),
        m,
        step_cap,
    }
}
