//! Deterministic acceptor machines: text format, direct simulation, and the
//! per-certificate enumeration oracle.

mod machine;
mod parse;
mod simulate;

pub use machine::{Dir, MachineSpec, Rule, SpecError, StateId, SymbolId};
pub use parse::{parse_machine_spec, to_text};
pub use simulate::{
    default_step_cap, enumerate_certificates_direct, for_each_certificate,
    sanitize_certificate_input, simulate_dtm, simulate_tape, DirectResult, Precheck, RunResult,
    SimError,
};
pub(crate) use simulate::next_node;
