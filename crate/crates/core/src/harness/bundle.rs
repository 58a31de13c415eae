//! Self-contained reproduction bundles for disagreements.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::exp::{simulate_all_certificates_exp, ExpConfig};
use crate::graph::{to_dot, Naming};
use crate::poly::{simulate_all_certificates_poly, PolyConfig};

use super::{load, HarnessError, InstanceCase, RunOptions, Verdicts};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    /// Minimized case.
    pub case: InstanceCase,
    /// Instance and certificate length before minimization.
    pub original_instance: String,
    pub original_m: usize,
    pub options: RunOptions,
    /// Verdicts of the minimized case when the bundle was written.
    pub verdicts: Verdicts,
}

const CASE_FILE: &str = "case.json";

/// Writes `<dir>/seed-<seed>/` holding `case.json`, `machine.tm`,
/// `instance.txt`, `exp.dot` and `poly.dot`. Returns the bundle directory.
pub fn write_bundle(dir: &Path, bundle: &Bundle) -> Result<PathBuf, HarnessError> {
    let out = dir.join(format!("seed-{}", bundle.case.seed));
    fs::create_dir_all(&out)?;
    fs::write(out.join(CASE_FILE), serde_json::to_string_pretty(bundle)?)?;
    fs::write(out.join("machine.tm"), &bundle.case.machine)?;
    fs::write(
        out.join("instance.txt"),
        format!("{}\nm={}\n", bundle.case.instance, bundle.case.m),
    )?;
    let case = &bundle.case;
    let (spec, word) = load(case).map_err(|msg| HarnessError::Case {
        seed: case.seed,
        msg,
    })?;
    let naming = Naming::from_spec(&spec);
    if let Ok(r) = simulate_all_certificates_exp(
        &spec,
        &word,
        case.m,
        ExpConfig {
            step_cap: case.step_cap,
            complete: true,
        },
    ) {
        fs::write(out.join("exp.dot"), to_dot(&r.graph, &naming, &r.accepting_edges))?;
    }
    let cfg = PolyConfig {
        step_cap: case.step_cap,
        max_verify_calls: bundle.options.max_verify_calls,
        fault: bundle.options.fault,
        verifier: bundle.options.verifier,
    };
    if let Ok(r) = simulate_all_certificates_poly(&spec, &word, case.m, cfg) {
        fs::write(out.join("poly.dot"), to_dot(&r.graph, &naming, &BTreeSet::new()))?;
    }
    Ok(out)
}

/// Reads a bundle from its directory or its `case.json`.
pub fn read_bundle(path: &Path) -> Result<Bundle, HarnessError> {
    let file = if path.is_dir() {
        path.join(CASE_FILE)
    } else {
        path.to_path_buf()
    };
    Ok(serde_json::from_str(&fs::read_to_string(file)?)?)
}
