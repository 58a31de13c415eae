//! Differential runs of the three engines over seeded random cases.

mod bundle;
mod gen;
mod minimize;

use std::ops::Range;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exp::{simulate_all_certificates_exp, ExpConfig};
use crate::poly::{simulate_all_certificates_poly, Fault, PolyConfig, PolyStats, Verifier};
use crate::tm::{enumerate_certificates_direct, parse_machine_spec, MachineSpec, SymbolId};
use crate::Outcome;

pub use bundle::{read_bundle, write_bundle, Bundle};
pub use gen::{generate_random_machine, random_case, Bounds, InstanceCase};
pub use minimize::{minimize_counterexample, MachineDraft};

/// Statement printed at the top of every report.
pub const HYPOTHESIS: &str = "The boundary-expansion simulator decides acceptance for some \
certificate in polynomial time. Each case compares it with per-certificate enumeration and \
the exhaustive simulator; disagreements are counterexamples to that claim.";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("case {seed}: {msg}")]
    Case { seed: u64, msg: String },
    #[error("bundle i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("bundle format: {0}")]
    Format(#[from] serde_json::Error),
}

/// Engine settings shared by every case of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    pub fault: Option<Fault>,
    pub max_verify_calls: usize,
    pub verifier: Verifier,
    /// Record wall-clock timings; off keeps reports byte-reproducible.
    #[serde(skip)]
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            fault: None,
            max_verify_calls: 20_000,
            verifier: Verifier::Pruning,
            timings: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub direct: Outcome,
    pub exp: Outcome,
    pub poly: Outcome,
}

impl Verdicts {
    /// Two engines reached different decisions. Capped verdicts are ignored.
    pub fn disagree(&self) -> bool {
        let d: Vec<bool> = [self.direct, self.exp, self.poly]
            .iter()
            .filter_map(|o| o.decided())
            .collect();
        d.windows(2).any(|w| w[0] != w[1])
    }

    pub fn any_capped(&self) -> bool {
        [self.direct, self.exp, self.poly].contains(&Outcome::Capped)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub direct_us: u64,
    pub exp_us: u64,
    pub poly_us: u64,
}

/// Per-case class; every case gets exactly one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Agree,
    Disagree,
    /// No disagreement, but some engine hit a cap.
    Capped,
    Error,
}

/// Result of running all engines on one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub verdicts: Verdicts,
    pub exp_edges: usize,
    pub poly_edges: usize,
    pub poly: PolyStats,
    pub timings: Timings,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub seed: u64,
    pub instance: String,
    pub m: usize,
    pub step_cap: usize,
    pub class: Class,
    pub verdicts: Option<Verdicts>,
    pub exp_edges: Option<usize>,
    pub poly_edges: Option<usize>,
    pub poly: Option<PolyStats>,
    /// Panic or setup failure message.
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl CaseReport {
    pub fn disagree(&self) -> bool {
        self.class == Class::Disagree
    }
}

pub(crate) fn load(case: &InstanceCase) -> Result<(MachineSpec, Vec<SymbolId>), String> {
    let spec = parse_machine_spec(&case.machine).map_err(|e| e.to_string())?;
    let word = spec.parse_word(&case.instance).map_err(|e| e.to_string())?;
    if word.is_empty() {
        return Err("empty instance".into());
    }
    Ok((spec, word))
}

fn micros(t: Instant) -> u64 {
    t.elapsed().as_micros() as u64
}

/// Runs the direct enumerator, the exhaustive simulator and the
/// boundary-expansion simulator on one case, in that order.
pub fn evaluate(case: &InstanceCase, opts: &RunOptions) -> Result<Evaluation, String> {
    let (spec, word) = load(case)?;
    let t = Instant::now();
    let direct = enumerate_certificates_direct(&spec, &word, case.m, case.step_cap).outcome;
    let direct_us = micros(t);
    let t = Instant::now();
    let exp_cfg = ExpConfig {
        step_cap: case.step_cap,
        complete: false,
    };
    let exp = simulate_all_certificates_exp(&spec, &word, case.m, exp_cfg).map_err(|e| e.to_string())?;
    let exp_us = micros(t);
    let t = Instant::now();
    let cfg = PolyConfig {
        step_cap: case.step_cap,
        max_verify_calls: opts.max_verify_calls,
        fault: opts.fault,
        verifier: opts.verifier,
    };
    let poly = simulate_all_certificates_poly(&spec, &word, case.m, cfg).map_err(|e| e.to_string())?;
    let poly_us = micros(t);
    Ok(Evaluation {
        verdicts: Verdicts {
            direct,
            exp: exp.outcome,
            poly: poly.outcome,
        },
        exp_edges: exp.graph.edge_count(),
        poly_edges: poly.graph.edge_count(),
        poly: poly.stats,
        timings: Timings {
            direct_us,
            exp_us,
            poly_us,
        },
    })
}

fn panic_message(panic: Box<dyn std::any::Any + Send>) -> String {
    panic
        .downcast_ref::<String>()
        .cloned()
        .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

/// Runs one case, turning errors and panics into an `Error` entry.
pub fn run_case(case: &InstanceCase, opts: &RunOptions) -> CaseReport {
    let mut report = CaseReport {
        seed: case.seed,
        instance: case.instance.clone(),
        m: case.m,
        step_cap: case.step_cap,
        class: Class::Error,
        verdicts: None,
        exp_edges: None,
        poly_edges: None,
        poly: None,
        error: None,
        timings: None,
    };
    match catch_unwind(AssertUnwindSafe(|| evaluate(case, opts))) {
        Ok(Ok(ev)) => {
            report.class = if ev.verdicts.disagree() {
                Class::Disagree
            } else if ev.verdicts.any_capped() {
                Class::Capped
            } else {
                Class::Agree
            };
            report.verdicts = Some(ev.verdicts);
            report.exp_edges = Some(ev.exp_edges);
            report.poly_edges = Some(ev.poly_edges);
            report.poly = Some(ev.poly);
            report.timings = opts.timings.then_some(ev.timings);
        }
        Ok(Err(msg)) => report.error = Some(msg),
        Err(panic) => report.error = Some(format!("panic: {}", panic_message(panic))),
    }
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub agree: usize,
    pub disagree: usize,
    pub capped: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub hypothesis: &'static str,
    pub seeds: (u64, u64),
    pub bounds: Bounds,
    pub options: RunOptions,
    pub summary: Summary,
    pub cases: Vec<CaseReport>,
    /// Bundle directories, one per disagreement.
    pub bundles: Vec<String>,
}

impl Report {
    pub fn disagreements(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| c.disagree())
    }
}

/// Generates and runs the cases for `seeds` in parallel; the report lists them
/// in seed order.
pub fn run_differential(seeds: Range<u64>, bounds: &Bounds, opts: &RunOptions) -> Report {
    let cases: Vec<CaseReport> = seeds
        .clone()
        .into_par_iter()
        .map(|seed| run_case(&random_case(seed, bounds), opts))
        .collect();
    let mut summary = Summary {
        cases: cases.len(),
        ..Summary::default()
    };
    for c in &cases {
        match c.class {
            Class::Agree => summary.agree += 1,
            Class::Disagree => summary.disagree += 1,
            Class::Capped => summary.capped += 1,
            Class::Error => summary.errors += 1,
        }
    }
    Report {
        version: env!("CARGO_PKG_VERSION"),
        hypothesis: HYPOTHESIS,
        seeds: (seeds.start, seeds.end),
        bounds: *bounds,
        options: *opts,
        summary,
        cases,
        bundles: Vec::new(),
    }
}

/// Minimizes every disagreement of `report` and writes one bundle each under
/// `dir`, recording the bundle paths in the report.
pub fn bundle_disagreements(
    report: &mut Report,
    bounds: &Bounds,
    opts: &RunOptions,
    dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    let seeds: Vec<u64> = report.disagreements().map(|c| c.seed).collect();
    let mut paths = Vec::new();
    for seed in seeds {
        let original = random_case(seed, bounds);
        let case = minimize_counterexample(&original, opts);
        let ev = evaluate(&case, opts).map_err(|msg| HarnessError::Case { seed, msg })?;
        let path = write_bundle(
            dir,
            &Bundle {
                case,
                original_instance: original.instance,
                original_m: original.m,
                options: *opts,
                verdicts: ev.verdicts,
            },
        )?;
        report.bundles.push(path.display().to_string());
        paths.push(path);
    }
    Ok(paths)
}

/// Re-runs a bundle's case with its recorded options.
pub fn replay(bundle: &Bundle) -> CaseReport {
    run_case(&bundle.case, &bundle.options)
}
