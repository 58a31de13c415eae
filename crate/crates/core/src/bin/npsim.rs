use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use npsim::exp::{footmarks_bounds, simulate_all_certificates_exp, ExpConfig};
use npsim::feasible::compute_feasible_graph_with_stats;
use npsim::graph::{parse_edge_list, to_dot, to_edge_list, CompGraph, Naming};
use npsim::harness::{bundle_disagreements, read_bundle, replay, run_differential, Bounds, RunOptions};
use npsim::poly::{simulate_all_certificates_poly, Fault, PolyConfig, Verifier};
use npsim::tm::{default_step_cap, enumerate_certificates_direct, parse_machine_spec, MachineSpec};
use npsim::verify::verify_existence_of_walk;

#[derive(Parser)]
#[command(name = "npsim", version, about = "Computation-graph simulators for verifier machines")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every certificate directly on the tape.
    Direct(Instance),
    /// Exhaustive all-certificates simulation with footmark graph output.
    Exp {
        #[command(flatten)]
        inst: Instance,
        /// Explore every branch instead of stopping at the first acceptance.
        #[arg(long)]
        complete: bool,
        /// Write the footmark graph as DOT.
        #[arg(long)]
        dump_dot: Option<PathBuf>,
        /// Write the footmark graph as an edge list readable by `feasible` and `verify-walk`.
        #[arg(long)]
        dump_edges: Option<PathBuf>,
    },
    /// Feasible graph of an edge list.
    Feasible {
        #[arg(long)]
        graph: PathBuf,
        /// Final edges, `;`-separated.
        #[arg(long, default_value = "")]
        final_edges: String,
        /// Initial nodes, `;`-separated.
        #[arg(long)]
        initial_nodes: String,
        #[arg(long)]
        dump_dot: Option<PathBuf>,
    },
    /// Decide whether a walk from the initial nodes ends with an edge.
    VerifyWalk {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        target_edge: String,
        #[arg(long)]
        initial_nodes: String,
        /// Write the per-iteration prune log.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Boundary-expansion simulation.
    Poly {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        max_verify_calls: Option<usize>,
        #[arg(long, value_enum, default_value_t = VerifierArg::Pruning)]
        verifier: VerifierArg,
        #[arg(long, value_enum)]
        fault: Option<FaultArg>,
        /// Write counters and phase timings as JSON.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        dump_dot: Option<PathBuf>,
    },
    /// Differential run of direct, exhaustive and boundary-expansion engines.
    Diff(DiffArgs),
    /// Re-run a bundle; exits 2 if the recorded disagreement reproduces.
    Replay {
        #[arg(long)]
        bundle: PathBuf,
    },
}

#[derive(Args)]
struct Instance {
    /// Machine file in the text format.
    #[arg(long)]
    machine: PathBuf,
    #[arg(long)]
    instance: String,
    /// Certificate length.
    #[arg(long, default_value_t = 0)]
    cert_len: usize,
    #[arg(long)]
    step_cap: Option<usize>,
}

#[derive(Args)]
struct DiffArgs {
    /// Seed range `a..b`.
    #[arg(long, default_value = "0..100")]
    seeds: String,
    /// Generator bounds as `states=6,symbols=3,len=8,m=5,cap=400`; unset keys keep these defaults.
    #[arg(long, default_value = "")]
    bounds: String,
    #[arg(long, default_value_t = 20_000)]
    max_verify_calls: usize,
    #[arg(long, value_enum, default_value_t = VerifierArg::Pruning)]
    verifier: VerifierArg,
    #[arg(long, value_enum)]
    fault: Option<FaultArg>,
    /// JSON report path; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for minimized counterexample bundles.
    #[arg(long, default_value = "npsim-bundles")]
    bundles: PathBuf,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    DropFirstCertificateSymbol,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::DropFirstCertificateSymbol => Fault::DropFirstCertificateSymbol,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifierArg {
    Pruning,
    Exhaustive,
}

impl From<VerifierArg> for Verifier {
    fn from(v: VerifierArg) -> Self {
        match v {
            VerifierArg::Pruning => Verifier::Pruning,
            VerifierArg::Exhaustive => Verifier::Exhaustive,
        }
    }
}

fn load_instance(inst: &Instance) -> Result<(MachineSpec, Vec<npsim::tm::SymbolId>, usize)> {
    let text = fs::read_to_string(&inst.machine)
        .with_context(|| format!("reading {}", inst.machine.display()))?;
    let spec = parse_machine_spec(&text)?;
    let word = spec.parse_word(&inst.instance)?;
    if word.is_empty() {
        bail!("instance must be non-empty");
    }
    let cap = inst.step_cap.unwrap_or_else(|| default_step_cap(word.len(), inst.cert_len));
    Ok((spec, word, cap))
}

fn load_graph(path: &PathBuf) -> Result<(CompGraph, Naming)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_edge_list(&text)?)
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn parse_seeds(s: &str) -> Result<std::ops::Range<u64>> {
    let (a, b) = s.split_once("..").context("seeds must look like a..b")?;
    let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty seed range {s}");
    }
    Ok(a..b)
}

fn diff(args: DiffArgs) -> Result<ExitCode> {
    let seeds = parse_seeds(&args.seeds)?;
    let bounds = Bounds::parse(&args.bounds).map_err(anyhow::Error::msg)?;
    let opts = RunOptions {
        fault: args.fault.map(Fault::from),
        max_verify_calls: args.max_verify_calls,
        verifier: args.verifier.into(),
        timings: args.timings,
    };
    let mut report = run_differential(seeds, &bounds, &opts);
    if report.summary.disagree > 0 {
        for p in bundle_disagreements(&mut report, &bounds, &opts, &args.bundles)? {
            eprintln!("bundle {}", p.display());
        }
    }
    let text = serde_json::to_string_pretty(&report)?;
    match &args.out {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    let s = &report.summary;
    eprintln!(
        "cases {} agree {} disagree {} capped {} errors {}",
        s.cases, s.agree, s.disagree, s.capped, s.errors
    );
    Ok(if s.errors > 0 {
        ExitCode::from(1)
    } else if s.disagree > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Direct(inst) => {
            let (spec, word, cap) = load_instance(&inst)?;
            let r = enumerate_certificates_direct(&spec, &word, inst.cert_len, cap);
            let accepting: Vec<String> = r.accepting.iter().map(|y| spec.format_word(y)).collect();
            print_json(&json!({
                "outcome": r.outcome,
                "accepting": accepting,
                "rejected": r.rejected,
                "stuck": r.stuck,
                "capped": r.capped,
            }))?;
        }
        Cmd::Exp {
            inst,
            complete,
            dump_dot,
            dump_edges,
        } => {
            let (spec, word, cap) = load_instance(&inst)?;
            let r = simulate_all_certificates_exp(&spec, &word, inst.cert_len, ExpConfig { step_cap: cap, complete })?;
            let naming = Naming::from_spec(&spec);
            if let Some(p) = dump_dot {
                fs::write(&p, to_dot(&r.graph, &naming, &r.accepting_edges))?;
            }
            if let Some(p) = dump_edges {
                fs::write(&p, to_edge_list(&r.graph, &naming))?;
            }
            let p = word.len() + inst.cert_len;
            print_json(&json!({
                "outcome": r.outcome,
                "initial": naming.node(&r.initial),
                "edges": r.graph.edge_count(),
                "nodes": r.graph.node_count(),
                "branches": r.branches,
                "final_edges": r.final_edges.iter().map(|e| naming.edge(e)).collect::<Vec<_>>(),
                "bounds": footmarks_bounds(&r.graph, cap.max(p)),
            }))?;
        }
        Cmd::Feasible {
            graph,
            final_edges,
            initial_nodes,
            dump_dot,
        } => {
            let (g, naming) = load_graph(&graph)?;
            let initial = naming.parse_node_set(&initial_nodes)?;
            let finals = naming.parse_edge_set(&final_edges)?;
            let (h, stats) = compute_feasible_graph_with_stats(&g, &initial, &finals);
            if let Some(p) = dump_dot {
                fs::write(&p, to_dot(&h, &naming, &finals))?;
            }
            print_json(&json!({
                "edges_before": g.edge_count(),
                "edges_after": h.edge_count(),
                "stats": stats,
                "removed": g
                    .edges()
                    .filter(|e| !h.contains_edge(e))
                    .map(|e| naming.edge(e))
                    .collect::<Vec<_>>(),
            }))?;
        }
        Cmd::VerifyWalk {
            graph,
            target_edge,
            initial_nodes,
            trace,
        } => {
            let (g, naming) = load_graph(&graph)?;
            let initial = naming.parse_node_set(&initial_nodes)?;
            let e = naming.parse_edge(&target_edge)?;
            let out = verify_existence_of_walk(&g, &initial, &e);
            if let Some(p) = trace {
                let mut log = String::new();
                for t in &out.trace {
                    log.push_str(&format!(
                        "{}\t{}\t{}\t{}\n",
                        t.iteration,
                        t.action,
                        t.edge.map(|e| naming.edge(&e)).unwrap_or_default(),
                        t.edges_left
                    ));
                }
                fs::write(&p, log)?;
            }
            print_json(&json!({
                "found": out.found,
                "iterations": out.iterations,
                "feasible_rebuilds": out.feasible_rebuilds,
            }))?;
        }
        Cmd::Poly {
            inst,
            max_verify_calls,
            verifier,
            fault,
            stats,
            dump_dot,
        } => {
            let (spec, word, cap) = load_instance(&inst)?;
            let mut cfg = PolyConfig::new(cap);
            if let Some(n) = max_verify_calls {
                cfg.max_verify_calls = n;
            }
            cfg.fault = fault.map(Fault::from);
            cfg.verifier = verifier.into();
            let r = simulate_all_certificates_poly(&spec, &word, inst.cert_len, cfg)?;
            let naming = Naming::from_spec(&spec);
            if let Some(p) = dump_dot {
                fs::write(&p, to_dot(&r.graph, &naming, &BTreeSet::new()))?;
            }
            if let Some(p) = stats {
                let v = json!({ "counters": r.stats, "timings": r.timings });
                fs::write(&p, serde_json::to_string_pretty(&v)? + "\n")?;
            }
            print_json(&json!({
                "outcome": r.outcome,
                "edges": r.graph.edge_count(),
                "stats": r.stats,
                "cap_reason": r.cap_reason,
            }))?;
        }
        Cmd::Diff(args) => return diff(args),
        Cmd::Replay { bundle } => {
            let b = read_bundle(&bundle)?;
            let r = replay(&b);
            if let Some(e) = &r.error {
                bail!("replay failed: {e}");
            }
            print_json(&json!({
                "seed": b.case.seed,
                "recorded": b.verdicts,
                "replayed": r.verdicts,
                "class": r.class,
            }))?;
            if r.disagree() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
