//! Command implementations behind the `lowdensity` binary.
//!
//! Each command returns its report text and a [`Verdict`]; the binary maps
//! verdicts and errors onto the exit-code contract:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success or certified |
//! | 1 | not certified |
//! | 2 | input, parse or usage error |
//! | 3 | soundness violation |

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::certificates::{kernel_certificate, omp_guarantee, uncertainty_check};
use crate::coherence::{coherence, mutual_coherence};
use crate::density::density_report;
use crate::error::Result;
use crate::experiment::{summary_csv, write_outputs, DictionarySpec, ExperimentConfig};
use crate::io::read_signal;
use crate::omp::omp_run;
use crate::oracle::probe_kernel_density;
use crate::rng::Rng;
use crate::dictionary::Dictionary;

/// Kernel probes below `threshold − PROBE_TOL` count as violations.
pub const PROBE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    NotCertified,
    Violation,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::NotCertified => 1,
            Self::Violation => 3,
        }
    }

    fn certified(ok: bool) -> Self {
        if ok {
            Self::Ok
        } else {
            Self::NotCertified
        }
    }
}

pub const ERROR_EXIT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Format {
    /// Single-line JSON; also switches the experiment summary from CSV to JSON.
    pub json: bool,
}

impl Format {
    fn render<T: Serialize>(self, value: &T) -> Result<String> {
        let mut s = if self.json { serde_json::to_string(value)? } else { serde_json::to_string_pretty(value)? };
        s.push('\n');
        Ok(s)
    }
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub body: String,
    pub verdict: Verdict,
}

/// Dictionary argument: a named constructor or a matrix file.
pub fn load_dictionary(arg: &str) -> Result<Dictionary> {
    DictionarySpec::parse(arg)?.build()
}

pub fn density(signal: &Path, fmt: Format) -> Result<CommandOutput> {
    let x = read_signal(signal)?;
    Ok(CommandOutput { body: fmt.render(&density_report(&x))?, verdict: Verdict::Ok })
}

pub fn coherence_cmd(dict: &str, other: Option<&str>, fmt: Format) -> Result<CommandOutput> {
    let a = load_dictionary(dict)?;
    let report = coherence(&a);
    let body = match other {
        Some(b) => {
            let b = load_dictionary(b)?;
            fmt.render(&json!({ "a": report, "b": coherence(&b), "mutual": mutual_coherence(&a, &b)? }))?
        }
        None => fmt.render(&report)?,
    };
    Ok(CommandOutput { body, verdict: Verdict::Ok })
}

pub fn certify_kernel(dict: &str, signal: &Path, fmt: Format) -> Result<CommandOutput> {
    let c = kernel_certificate(&load_dictionary(dict)?, &read_signal(signal)?)?;
    Ok(CommandOutput { body: fmt.render(&c)?, verdict: Verdict::certified(c.certified_nonzero) })
}

pub fn certify_uncertainty(dict_a: &str, dict_b: &str, x: &Path, z: &Path, fmt: Format) -> Result<CommandOutput> {
    let r = uncertainty_check(&load_dictionary(dict_a)?, &load_dictionary(dict_b)?, &read_signal(x)?, &read_signal(z)?)?;
    let verdict = if r.applicable && !r.holds { Verdict::Violation } else { Verdict::certified(r.certified()) };
    Ok(CommandOutput { body: fmt.render(&r)?, verdict })
}

pub fn certify_omp(dict: &str, signal: &Path, t_max: usize, fmt: Format) -> Result<CommandOutput> {
    let g = omp_guarantee(&load_dictionary(dict)?, &read_signal(signal)?, t_max)?;
    Ok(CommandOutput { body: fmt.render(&g)?, verdict: Verdict::certified(g.certified) })
}

pub fn run_omp(dict: &str, measurement: &Path, t_max: usize, residual_tol: Option<f64>, fmt: Format) -> Result<CommandOutput> {
    let trace = omp_run(&load_dictionary(dict)?, &read_signal(measurement)?, t_max, residual_tol)?;
    Ok(CommandOutput { body: fmt.render(&trace)?, verdict: Verdict::Ok })
}

pub fn probe_kernel(dict: &str, trials: usize, seed: u64, fmt: Format) -> Result<CommandOutput> {
    let r = probe_kernel_density(&load_dictionary(dict)?, trials, &mut Rng::new(seed))?;
    let verdict = if r.consistent(PROBE_TOL) { Verdict::Ok } else { Verdict::Violation };
    Ok(CommandOutput { body: fmt.render(&r)?, verdict })
}

/// Runs a config file. `out` overrides the per-trial CSV path (the summary
/// then lands beside it) and `seed` overrides `base_seed`.
pub fn experiment(config: &Path, out: Option<&Path>, seed: Option<u64>, fmt: Format) -> Result<CommandOutput> {
    let mut cfg = ExperimentConfig::load(config)?;
    if let Some(out) = out {
        cfg.output = out.to_path_buf();
        cfg.summary_output = None;
    }
    if let Some(seed) = seed {
        cfg.base_seed = seed;
    }
    let outcome = crate::experiment::run_experiment(&cfg)?;
    let summary_path: PathBuf = cfg.summary_path();
    write_outputs(&cfg.output, &summary_path, &outcome)?;
    let body = if fmt.json {
        fmt.render(&json!({
            "mu": outcome.mu,
            "summary": outcome.summary,
            "violations": outcome.violations,
        }))?
    } else {
        summary_csv(&outcome.summary)
    };
    let verdict = if outcome.violations.is_empty() { Verdict::Ok } else { Verdict::Violation };
    Ok(CommandOutput { body, verdict })
}
