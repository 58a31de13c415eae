//! Line-oriented machine text format.
//!
//! ```text
//! #! scan right, accept at the first blank
//! states: q0 qacc qrej
//! final: accept=qacc reject=qrej
//! alphabet: a
//! blank: _
//! init: q0
//! transitions:
//! q0 a -> a R q0
//! q0 _ -> _ R qacc
//! ```
//!
//! `#!` starts a comment so that `#` stays usable as a tape symbol.

use std::fmt::Write as _;

use super::machine::{Dir, MachineSpec, Rule, SpecError, StateId, SymbolId};

fn strip_comment(line: &str) -> &str {
    match line.find("#!") {
        Some(k) => &line[..k],
        None => line,
    }
}

struct RawRule<'a> {
    line: usize,
    q: &'a str,
    s: &'a str,
    w: &'a str,
    d: &'a str,
    next: &'a str,
}

/// Parses and validates a machine document.
pub fn parse_machine_spec(text: &str) -> Result<MachineSpec, SpecError> {
    let mut states: Option<Vec<String>> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut blank: Option<String> = None;
    let mut init: Option<(String, usize)> = None;
    let mut finals: Option<(String, String, usize)> = None;
    let mut raw = Vec::new();

    for (k, full) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = strip_comment(full).trim();
        if line.is_empty() {
            continue;
        }
        if line.contains("->") {
            let (lhs, rhs) = line.split_once("->").unwrap();
            let l: Vec<&str> = lhs.split_whitespace().collect();
            let r: Vec<&str> = rhs.split_whitespace().collect();
            if l.len() != 2 || r.len() != 3 {
                return Err(SpecError::Syntax {
                    line: line_no,
                    msg: "rule must read `q s -> s' d q'`".into(),
                });
            }
            raw.push(RawRule {
                line: line_no,
                q: l[0],
                s: l[1],
                w: r[0],
                d: r[1],
                next: r[2],
            });
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(SpecError::Syntax {
                line: line_no,
                msg: format!("unrecognised line `{line}`"),
            });
        };
        let words: Vec<String> = value.split_whitespace().map(str::to_string).collect();
        let dup = |present: bool| -> Result<(), SpecError> {
            if present {
                Err(SpecError::Syntax {
                    line: line_no,
                    msg: format!("section `{}` given twice", key.trim()),
                })
            } else {
                Ok(())
            }
        };
        match key.trim() {
            "states" => {
                dup(states.is_some())?;
                states = Some(words);
            }
            "alphabet" => {
                dup(alphabet.is_some())?;
                alphabet = Some(words);
            }
            "blank" => {
                dup(blank.is_some())?;
                if words.len() != 1 {
                    return Err(SpecError::Syntax {
                        line: line_no,
                        msg: "blank takes exactly one symbol".into(),
                    });
                }
                blank = Some(words[0].clone());
            }
            "init" => {
                dup(init.is_some())?;
                if words.len() != 1 {
                    return Err(SpecError::Syntax {
                        line: line_no,
                        msg: "init takes exactly one state".into(),
                    });
                }
                init = Some((words[0].clone(), line_no));
            }
            "final" => {
                dup(finals.is_some())?;
                let mut acc = None;
                let mut rej = None;
                for w in &words {
                    match w.split_once('=') {
                        Some(("accept", v)) => acc = Some(v.to_string()),
                        Some(("reject", v)) => rej = Some(v.to_string()),
                        _ => {
                            return Err(SpecError::Syntax {
                                line: line_no,
                                msg: format!("bad final entry `{w}`"),
                            })
                        }
                    }
                }
                match (acc, rej) {
                    (Some(a), Some(r)) => finals = Some((a, r, line_no)),
                    _ => {
                        return Err(SpecError::Syntax {
                            line: line_no,
                            msg: "final needs accept=<id> reject=<id>".into(),
                        })
                    }
                }
            }
            "transitions" => {
                if !words.is_empty() {
                    return Err(SpecError::Syntax {
                        line: line_no,
                        msg: "transitions header takes no values".into(),
                    });
                }
            }
            other => {
                return Err(SpecError::Syntax {
                    line: line_no,
                    msg: format!("unknown section `{other}`"),
                })
            }
        }
    }

    let missing = |name: &str| SpecError::Syntax {
        line: 0,
        msg: format!("missing `{name}:` section"),
    };
    let states = states.ok_or_else(|| missing("states"))?;
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let blank = blank.ok_or_else(|| missing("blank"))?;
    let (init, init_line) = init.ok_or_else(|| missing("init"))?;
    let (acc, rej, fin_line) = finals.ok_or_else(|| missing("final"))?;

    let state = |name: &str, line: usize| -> Result<StateId, SpecError> {
        states
            .iter()
            .position(|s| s == name)
            .map(|k| StateId(k as u16))
            .ok_or_else(|| SpecError::Reference {
                kind: "state",
                name: name.to_string(),
                line,
            })
    };
    let symbol = |name: &str, line: usize| -> Result<SymbolId, SpecError> {
        if name == blank {
            return Ok(SymbolId(alphabet.len() as u16));
        }
        alphabet
            .iter()
            .position(|s| s == name)
            .map(|k| SymbolId(k as u16))
            .ok_or_else(|| SpecError::Reference {
                kind: "symbol",
                name: name.to_string(),
                line,
            })
    };

    let initial = state(&init, init_line)?;
    let accept = state(&acc, fin_line)?;
    let reject = state(&rej, fin_line)?;
    let mut rules = Vec::with_capacity(raw.len());
    for r in &raw {
        let dir = match r.d {
            "L" => Dir::L,
            "R" => Dir::R,
            other => {
                return Err(SpecError::Validation(format!(
                    "line {}: direction must be L or R, got `{other}`",
                    r.line
                )))
            }
        };
        rules.push((
            state(r.q, r.line)?,
            symbol(r.s, r.line)?,
            Rule {
                write: symbol(r.w, r.line)?,
                dir,
                next: state(r.next, r.line)?,
            },
        ));
    }
    MachineSpec::new(states, alphabet, blank, initial, accept, reject, &rules)
}

/// Renders a machine in the text format; the output reparses to an equal value.
pub fn to_text(spec: &MachineSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", spec.states().join(" "));
    let _ = writeln!(
        out,
        "final: accept={} reject={}",
        spec.state_name(spec.accept()),
        spec.state_name(spec.reject())
    );
    let _ = writeln!(out, "alphabet: {}", spec.input_symbols().join(" "));
    let _ = writeln!(out, "blank: {}", spec.symbol_name(spec.blank()));
    let _ = writeln!(out, "init: {}", spec.state_name(spec.initial()));
    let _ = writeln!(out, "transitions:");
    for (q, s, r) in spec.rules() {
        let _ = writeln!(
            out,
            "{} {} -> {} {} {}",
            spec.state_name(q),
            spec.symbol_name(s),
            spec.symbol_name(r.write),
            r.dir,
            spec.state_name(r.next)
        );
    }
    out
}
