//! Greedy shrinking of disagreeing cases.

use crate::tm::{to_text, Dir, MachineSpec, Rule, SpecError, StateId};

use super::{evaluate, InstanceCase, RunOptions};

/// Name-based machine description that is easy to edit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineDraft {
    pub states: Vec<String>,
    pub input: Vec<String>,
    pub blank: String,
    pub initial: String,
    pub accept: String,
    pub reject: String,
    /// `(state, read, write, dir, next)`.
    pub rules: Vec<(String, String, String, Dir, String)>,
}

impl MachineDraft {
    pub fn from_spec(spec: &MachineSpec) -> Self {
        let name = |q: StateId| spec.state_name(q).to_string();
        MachineDraft {
            states: spec.states().to_vec(),
            input: spec.symbols()[..spec.input_len()].to_vec(),
            blank: spec.symbol_name(spec.blank()).to_string(),
            initial: name(spec.initial()),
            accept: name(spec.accept()),
            reject: name(spec.reject()),
            rules: spec
                .rules()
                .map(|(q, s, r)| {
                    (
                        name(q),
                        spec.symbol_name(s).to_string(),
                        spec.symbol_name(r.write).to_string(),
                        r.dir,
                        name(r.next),
                    )
                })
                .collect(),
        }
    }

    pub fn build(&self) -> Result<MachineSpec, SpecError> {
        let sid = |n: &str| {
            self.states
                .iter()
                .position(|s| s == n)
                .map(|k| StateId(k as u16))
                .ok_or_else(|| SpecError::Validation(format!("unknown state `{n}`")))
        };
        let mut symbols = self.input.clone();
        symbols.push(self.blank.clone());
        let yid = |n: &str| {
            symbols
                .iter()
                .position(|s| s == n)
                .map(|k| crate::tm::SymbolId(k as u16))
                .ok_or_else(|| SpecError::Validation(format!("unknown symbol `{n}`")))
        };
        let mut rules = Vec::with_capacity(self.rules.len());
        for (q, s, w, d, n) in &self.rules {
            rules.push((
                sid(q)?,
                yid(s)?,
                Rule {
                    write: yid(w)?,
                    dir: *d,
                    next: sid(n)?,
                },
            ));
        }
        MachineSpec::new(
            self.states.clone(),
            self.input.clone(),
            self.blank.clone(),
            sid(&self.initial)?,
            sid(&self.accept)?,
            sid(&self.reject)?,
            &rules,
        )
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    draft: MachineDraft,
    word: Vec<String>,
    m: usize,
}

fn moves(c: &Candidate) -> Vec<Candidate> {
    let mut out = Vec::new();
    if c.m > 0 {
        out.push(Candidate {
            m: c.m - 1,
            ..c.clone()
        });
    }
    if c.word.len() > 1 {
        for k in 0..c.word.len() {
            let mut n = c.clone();
            n.word.remove(k);
            out.push(n);
        }
    }
    let d = &c.draft;
    for q in &d.states {
        if *q == d.initial || *q == d.accept || *q == d.reject {
            continue;
        }
        let mut n = c.clone();
        n.draft.states.retain(|s| s != q);
        n.draft.rules.retain(|r| r.0 != *q);
        for r in &mut n.draft.rules {
            if r.4 == *q {
                r.4 = d.reject.clone();
            }
        }
        out.push(n);
    }
    if d.input.len() > 1 {
        for a in &d.input {
            if c.word.contains(a) {
                continue;
            }
            let mut n = c.clone();
            n.draft.input.retain(|s| s != a);
            n.draft.rules.retain(|r| r.1 != *a);
            for r in &mut n.draft.rules {
                if r.2 == *a {
                    r.2 = d.blank.clone();
                }
            }
            out.push(n);
        }
    }
    for k in 0..d.rules.len() {
        let mut n = c.clone();
        n.draft.rules.remove(k);
        out.push(n);
    }
    out
}

fn to_case(c: &Candidate, seed: u64, step_cap: usize) -> Option<InstanceCase> {
    let spec = c.draft.build().ok()?;
    let word: Vec<_> = c
        .word
        .iter()
        .map(|s| spec.symbol_id(s))
        .collect::<Option<_>>()?;
    Some(InstanceCase {
        seed,
        machine: to_text(&spec),
        instance: spec.format_word(&word),
        m: c.m,
        step_cap,
    })
}

fn disagrees(case: &InstanceCase, opts: &RunOptions) -> bool {
    matches!(evaluate(case, opts), Ok(ev) if ev.verdicts.disagree())
}

/// Shrinks a disagreeing case until no single move keeps the disagreement.
///
/// Moves, tried in order: shorten the certificate, delete an instance symbol,
/// delete a working state (redirecting its incoming rules to reject), delete
/// an unused input symbol, delete a rule. The step cap stays fixed. A case that
/// does not disagree is returned unchanged.
pub fn minimize_counterexample(case: &InstanceCase, opts: &RunOptions) -> InstanceCase {
    let Ok(spec) = crate::tm::parse_machine_spec(&case.machine) else {
        return case.clone();
    };
    let Ok(word) = spec.parse_word(&case.instance) else {
        return case.clone();
    };
    if !disagrees(case, opts) {
        return case.clone();
    }
    let mut best = Candidate {
        draft: MachineDraft::from_spec(&spec),
        word: word.iter().map(|&s| spec.symbol_name(s).to_string()).collect(),
        m: case.m,
    };
    let mut best_case = case.clone();
    'outer: loop {
        for n in moves(&best) {
            let Some(nc) = to_case(&n, case.seed, case.step_cap) else {
                continue;
            };
            if disagrees(&nc, opts) {
                best = n;
                best_case = nc;
                continue 'outer;
            }
        }
        return best_case;
    }
}
