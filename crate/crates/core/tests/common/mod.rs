#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use npsim::exp::{simulate_all_certificates_exp, ExpConfig};
use npsim::graph::{CompGraph, CompNode, Edge};
use npsim::harness::{random_case, Bounds};
use npsim::tm::{parse_machine_spec, MachineSpec, StateId, SymbolId};
use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Complete footmarks of one random case.
pub struct Footmarks {
    pub seed: u64,
    pub spec: MachineSpec,
    pub word: Vec<SymbolId>,
    pub m: usize,
    pub graph: CompGraph,
    pub initial: BTreeSet<CompNode>,
    pub final_edges: BTreeSet<Edge>,
}

/// Small bounds that keep complete footmarks to a few hundred edges.
pub fn small_bounds() -> Bounds {
    Bounds {
        states: 5,
        symbols: 2,
        max_len: 4,
        max_m: 3,
        max_step_cap: 40,
    }
}

pub fn footmarks(seed: u64, bounds: &Bounds) -> Option<Footmarks> {
    let case = random_case(seed, bounds);
    let spec = parse_machine_spec(&case.machine).ok()?;
    let word = spec.parse_word(&case.instance).ok()?;
    let r = simulate_all_certificates_exp(
        &spec,
        &word,
        case.m,
        ExpConfig {
            step_cap: case.step_cap,
            complete: true,
        },
    )
    .ok()?;
    Some(Footmarks {
        seed,
        spec,
        word,
        m: case.m,
        graph: r.graph,
        initial: BTreeSet::from([r.initial]),
        final_edges: r.final_edges,
    })
}

/// First `n` seeds from `start` whose footmarks have between 1 and `max_edges`
/// edges.
pub fn footmark_corpus(start: u64, n: usize, max_edges: usize) -> Vec<Footmarks> {
    let bounds = small_bounds();
    (start..)
        .filter_map(|s| footmarks(s, &bounds))
        .filter(|f| (1..=max_edges).contains(&f.graph.edge_count()))
        .take(n)
        .collect()
}

/// Final-edge set drawn per sample: all final edges, a random subset, or a
/// random subset of all edges.
pub fn pick_finals(f: &Footmarks, rng: &mut ChaCha8Rng) -> BTreeSet<Edge> {
    match rng.gen_range(0..3) {
        0 => f.final_edges.clone(),
        1 => f
            .final_edges
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .copied()
            .collect(),
        _ => {
            let k = rng.gen_range(0..=3.min(f.graph.edge_count()));
            f.graph.edges().copied().choose_multiple(rng, k).into_iter().collect()
        }
    }
}

/// Random edge-deletion subgraph together with a target edge it contains.
pub fn random_subgraph(f: &Footmarks, rng: &mut ChaCha8Rng) -> (CompGraph, Edge) {
    let p = [0.0, 0.05, 0.15, 0.3][rng.gen_range(0..4)];
    let g = f.graph.filter_edges(|_| !rng.gen_bool(p));
    let g = if g.is_empty() { f.graph.clone() } else { g };
    let target = if rng.gen_bool(0.5) {
        f.final_edges.iter().filter(|e| g.contains_edge(e)).copied().choose(rng)
    } else {
        None
    };
    let target = target.unwrap_or_else(|| *g.edges().choose(rng).expect("non-empty"));
    (g, target)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Result of the array-tape reference simulator.
pub struct NaiveRun {
    pub state: StateId,
    pub steps: usize,
    pub halted: bool,
    /// Cells written so far.
    pub tape: BTreeMap<i32, SymbolId>,
}

/// Plain array-tape simulation, independent of the computation-graph code.
/// `None` if the machine gets stuck.
pub fn naive_run(spec: &MachineSpec, input: &[SymbolId], cap: usize) -> Option<NaiveRun> {
    let mut tape: BTreeMap<i32, SymbolId> = BTreeMap::new();
    let read = |tape: &BTreeMap<i32, SymbolId>, i: i32| {
        tape.get(&i).copied().unwrap_or_else(|| {
            usize::try_from(i)
                .ok()
                .and_then(|k| input.get(k).copied())
                .unwrap_or(spec.blank())
        })
    };
    let (mut q, mut head, mut steps) = (spec.initial(), 0i32, 0);
    while !spec.is_final(q) {
        if steps == cap {
            return Some(NaiveRun { state: q, steps, halted: false, tape });
        }
        let r = spec.rule(q, read(&tape, head))?;
        tape.insert(head, r.write);
        head += r.dir.delta();
        q = r.next;
        steps += 1;
    }
    Some(NaiveRun { state: q, steps, halted: true, tape })
}
