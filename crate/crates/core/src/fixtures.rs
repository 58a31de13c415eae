//! Bundled toy machines used by tests, examples and the harness corpus.

use crate::tm::{parse_machine_spec, MachineSpec};

/// Scans right over `a` and accepts at the first blank.
pub const M_SCAN: &str = "\
#! scan right, accept at the first blank
states: q0 qacc qrej
final: accept=qacc reject=qrej
alphabet: a
blank: _
init: q0
transitions:
q0 a -> a R q0
q0 _ -> _ R qacc
";

/// Writes, steps right, steps back, and steps right again: one tier-1 revisit
/// on each of cells 0 and 1 for input `aa`.
pub const M_BOUNCE: &str = "\
#! bounce once between cells 0 and 1
states: q0 q1 q2 qacc qrej
final: accept=qacc reject=qrej
alphabet: a x y
blank: _
init: q0
transitions:
q0 a -> x R q1
q0 x -> x R qrej
q0 y -> y R qrej
q0 _ -> _ R qrej
q1 a -> y L q2
q1 x -> x R qrej
q1 y -> y R qrej
q1 _ -> _ R qrej
q2 x -> x R qacc
q2 a -> a R qrej
q2 y -> y R qrej
q2 _ -> _ R qrej
";

/// Verifier for instances `b#` with a one-symbol certificate: accepts iff the
/// certificate equals `b`.
pub const M_EQ: &str = "\
#! remember bit 0, cross the delimiter, compare with the certificate cell
states: q0 p0 p1 c0 c1 qacc qrej
final: accept=qacc reject=qrej
alphabet: 0 1 #
blank: _
init: q0
transitions:
q0 0 -> 0 R p0
q0 1 -> 1 R p1
q0 # -> # R qrej
q0 _ -> _ R qrej
p0 # -> # R c0
p0 0 -> 0 R qrej
p0 1 -> 1 R qrej
p0 _ -> _ R qrej
p1 # -> # R c1
p1 0 -> 0 R qrej
p1 1 -> 1 R qrej
p1 _ -> _ R qrej
c0 0 -> 0 R qacc
c0 1 -> 1 R qrej
c0 # -> # R qrej
c0 _ -> _ R qrej
c1 1 -> 1 R qacc
c1 0 -> 0 R qrej
c1 # -> # R qrej
c1 _ -> _ R qrej
";

/// `M_EQ` with every certificate comparison wired to the reject state.
pub const M_EQ_NEVER: &str = "\
#! like M_EQ but no certificate is ever accepted
states: q0 p0 p1 c0 c1 qacc qrej
final: accept=qacc reject=qrej
alphabet: 0 1 #
blank: _
init: q0
transitions:
q0 0 -> 0 R p0
q0 1 -> 1 R p1
q0 # -> # R qrej
q0 _ -> _ R qrej
p0 # -> # R c0
p0 0 -> 0 R qrej
p0 1 -> 1 R qrej
p0 _ -> _ R qrej
p1 # -> # R c1
p1 0 -> 0 R qrej
p1 1 -> 1 R qrej
p1 _ -> _ R qrej
c0 0 -> 0 R qrej
c0 1 -> 1 R qrej
c0 # -> # R qrej
c0 _ -> _ R qrej
c1 1 -> 1 R qrej
c1 0 -> 0 R qrej
c1 # -> # R qrej
c1 _ -> _ R qrej
";

pub fn m_scan() -> MachineSpec {
    parse_machine_spec(M_SCAN).expect("fixture parses")
}

pub fn m_bounce() -> MachineSpec {
    parse_machine_spec(M_BOUNCE).expect("fixture parses")
}

pub fn m_eq() -> MachineSpec {
    parse_machine_spec(M_EQ).expect("fixture parses")
}

pub fn m_eq_never() -> MachineSpec {
    parse_machine_spec(M_EQ_NEVER).expect("fixture parses")
}

/// `(name, machine text, instance, certificate length)` for the fixture corpus.
pub const CORPUS: &[(&str, &str, &str, usize)] = &[
    ("M_SCAN", M_SCAN, "aa", 0),
    ("M_SCAN", M_SCAN, "a", 1),
    ("M_BOUNCE", M_BOUNCE, "aa", 0),
    ("M_BOUNCE", M_BOUNCE, "a", 1),
    ("M_EQ", M_EQ, "0#", 1),
    ("M_EQ", M_EQ, "1#", 1),
    ("M_EQ_NEVER", M_EQ_NEVER, "0#", 1),
];
