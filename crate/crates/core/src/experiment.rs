//! Monte-Carlo recovery experiments.
//!
//! An experiment fixes a dictionary, draws `trial_count` random signals for
//! each requested sparsity `k`, certifies each one with the density-based
//! guarantee and the classical sparsity threshold, runs OMP and records
//! whether the signal was recovered exactly. Trials are independent: trial
//! `i` (numbered across all `k` values) uses the seed `base_seed + i`, so
//! results do not depend on scheduling and reruns are byte-identical.
//!
//! A certified trial that OMP fails to recover is a soundness violation of
//! the guarantee and is counted separately.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificates::omp_guarantee_for_coherence;
use crate::coherence::coherence;
use crate::density::{make_alpha_decaying, sparsity, truncate_to_largest};
use crate::dictionary::{hadamard_dictionary, identity_hadamard, random_unit_dictionary, Dictionary};
use crate::error::{Error, Result};
use crate::io::{read_dictionary, read_signal};
use crate::omp::{omp_run, OmpTrace};
use crate::rng::{trial_seed, Rng};
use crate::signal::Signal;

/// Relative coefficient error below which recovery counts as exact.
pub const EXACT_RECOVERY_TOL: f64 = 1e-8;

/// Relative modulus gap under which two entries belong to the same tie set.
pub const TIE_REL_TOL: f64 = 1e-12;

/// Named dictionary constructor or matrix file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DictionarySpec {
    Identity { m: usize },
    Hadamard { m: usize },
    /// `[I_m  H_m]`
    IdentityHadamard { m: usize },
    Random { m: usize, n: usize, seed: u64 },
    File {
        path: PathBuf,
        #[serde(default)]
        normalize: bool,
    },
}

impl DictionarySpec {
    /// Parses `identity:M`, `hadamard:M`, `identity-hadamard:M`,
    /// `random:M:N:SEED`; anything else is a matrix file path.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| -> Result<u64> {
            p.parse::<u64>().map_err(|_| Error::InvalidParameter(format!("bad number '{p}' in '{s}'")))
        };
        Ok(match parts.as_slice() {
            ["identity", m] => Self::Identity { m: num(m)? as usize },
            ["hadamard", m] => Self::Hadamard { m: num(m)? as usize },
            ["identity-hadamard", m] => Self::IdentityHadamard { m: num(m)? as usize },
            ["random", m, n, seed] => Self::Random { m: num(m)? as usize, n: num(n)? as usize, seed: num(seed)? },
            _ => Self::File { path: PathBuf::from(s), normalize: false },
        })
    }

    pub fn build(&self) -> Result<Dictionary> {
        match self {
            Self::Identity { m } => Dictionary::identity(*m),
            Self::Hadamard { m } => hadamard_dictionary(*m),
            Self::IdentityHadamard { m } => identity_hadamard(*m),
            Self::Random { m, n, seed } => random_unit_dictionary(*m, *n, &mut Rng::new(*seed)),
            Self::File { path, normalize } => read_dictionary(path, *normalize),
        }
    }

    fn resolve(&mut self, base: &Path) {
        if let Self::File { path, .. } = self {
            if path.is_relative() {
                *path = base.join(&*path);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalFamily {
    /// Unit-modulus entries with random phases on a random support.
    ConstantModulus,
    /// The `k` largest entries `alpha^j` of an alpha-decaying signal,
    /// scattered onto a random support with random phases.
    AlphaDecaying,
    /// A fixed signal read from `signal_file`.
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TMaxPolicy {
    #[default]
    EqualToK,
    Fixed(usize),
}

impl TMaxPolicy {
    fn for_k(self, k: usize) -> usize {
        match self {
            Self::EqualToK => k,
            Self::Fixed(t) => t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dictionary_spec: DictionarySpec,
    pub signal_family: SignalFamily,
    /// Sparsities to sweep; ignored for the file family.
    #[serde(default)]
    pub k: Vec<usize>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub signal_file: Option<PathBuf>,
    /// Trials per `k`.
    pub trial_count: usize,
    pub base_seed: u64,
    #[serde(default)]
    pub t_max: TMaxPolicy,
    /// Per-trial CSV.
    pub output: PathBuf,
    /// Per-k summary CSV; defaults to `<output stem>.summary.csv`.
    #[serde(default)]
    pub summary_output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Reads a JSON config; relative paths are taken relative to its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg: Self = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.dictionary_spec.resolve(base);
        for p in [Some(&mut cfg.output), cfg.signal_file.as_mut(), cfg.summary_output.as_mut()]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn summary_path(&self) -> PathBuf {
        self.summary_output.clone().unwrap_or_else(|| {
            let stem = self.output.file_stem().and_then(|s| s.to_str()).unwrap_or("experiment");
            self.output.with_file_name(format!("{stem}.summary.csv"))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub k: usize,
    pub t_max: usize,
    /// Density-based OMP guarantee holds.
    pub certified: bool,
    /// ‖x‖₀ < ½(1 + 1/μ).
    pub classically_certified: bool,
    /// OMP support equals the true support and the relative coefficient
    /// error is at most 1e-8.
    pub exact_recovery: bool,
    pub residual_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub k: usize,
    pub delta_certified_rate: f64,
    pub classical_certified_rate: f64,
    pub exact_recovery_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOutcome {
    pub mu: f64,
    pub records: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
    /// Trials that were certified but where OMP left the magnitude order or
    /// failed exact recovery.
    pub violations: Vec<usize>,
}

/// A drawn signal together with its OMP outcome.
#[derive(Debug, Clone)]
pub struct TrialRun {
    pub record: TrialRecord,
    pub signal: Signal,
    pub trace: OmpTrace,
    pub follows_order: bool,
}

impl TrialRun {
    pub fn violates_guarantee(&self) -> bool {
        self.record.certified
            && (!self.follows_order
                || (self.record.t_max == sparsity(&self.signal, 0.0) && !self.record.exact_recovery))
    }
}

/// Draws one signal from `family` with `k` nonzeros in `n` dimensions.
pub fn draw_signal(family: SignalFamily, n: usize, k: usize, alpha: Option<f64>, rng: &mut Rng) -> Result<Signal> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, dim: n });
    }
    let magnitudes: Vec<f64> = match family {
        SignalFamily::ConstantModulus => vec![1.0; k],
        SignalFamily::AlphaDecaying => {
            let alpha = alpha.ok_or_else(|| Error::InvalidParameter("alpha-decaying family needs alpha".into()))?;
            let full = truncate_to_largest(&make_alpha_decaying(n, alpha)?, k)?;
            full.entries()[..k].iter().map(|z| z.re).collect()
        }
        SignalFamily::File => {
            return Err(Error::InvalidParameter("file signals are not drawn".into()));
        }
    };
    let positions = rng.distinct_indices(n, k);
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for (&p, &m) in positions.iter().zip(&magnitudes) {
        e[p] = rng.unit_phase() * m;
    }
    Signal::new(e)
}

/// Whether each selected index had (up to [`TIE_REL_TOL`]) the largest
/// modulus among the entries of `x` not selected before it.
pub fn follows_magnitude_order(x: &Signal, selected: &[usize]) -> bool {
    let moduli = x.moduli();
    let mut taken = vec![false; x.dim()];
    for &s in selected {
        if s >= x.dim() || taken[s] {
            return false;
        }
        let max = (0..x.dim()).filter(|&i| !taken[i]).map(|i| moduli[i]).fold(0.0, f64::max);
        if moduli[s] < max * (1.0 - TIE_REL_TOL) {
            return false;
        }
        taken[s] = true;
    }
    true
}

/// Support equality plus relative ℓ2 error of at most [`EXACT_RECOVERY_TOL`].
pub fn is_exact_recovery(x: &Signal, trace: &OmpTrace) -> Result<bool> {
    let mut found = trace.support.sorted();
    found.dedup();
    if found != x.support(0.0) {
        return Ok(false);
    }
    let xhat = trace.estimate(x.dim())?;
    let err = xhat
        .entries()
        .iter()
        .zip(x.entries())
        .map(|(p, q)| (p - q).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(err <= EXACT_RECOVERY_TOL * x.norm_l2())
}

/// Measures `x`, certifies it and runs OMP with `t_max` iterations.
pub fn evaluate_trial(a: &Dictionary, mu: f64, x: Signal, t_max: usize, trial: usize, seed: u64) -> Result<TrialRun> {
    let k = sparsity(&x, 0.0);
    let (certified, classically_certified) = if mu > 0.0 {
        let g = omp_guarantee_for_coherence(mu, &x, t_max)?;
        (g.certified, g.classical_certified)
    } else {
        (false, false)
    };
    let y = Signal::from_dvector(&a.apply(&x)?)?;
    let trace = omp_run(a, &y, t_max, None)?;
    let exact_recovery = is_exact_recovery(&x, &trace)?;
    let follows_order = follows_magnitude_order(&x, &trace.selected);
    let record = TrialRecord {
        trial,
        seed,
        k,
        t_max,
        certified,
        classically_certified,
        exact_recovery,
        residual_norm: trace.final_residual_norm(),
    };
    Ok(TrialRun { record, signal: x, trace, follows_order })
}

fn validate(cfg: &ExperimentConfig, a: &Dictionary) -> Result<()> {
    if cfg.trial_count == 0 {
        return Err(Error::InvalidParameter("trial_count must be >= 1".into()));
    }
    let max_t = a.rows().min(a.cols());
    if let TMaxPolicy::Fixed(t) = cfg.t_max {
        if t == 0 || t > max_t {
            return Err(Error::TMaxOutOfRange { t_max: t, max: max_t });
        }
    }
    match cfg.signal_family {
        SignalFamily::File => {
            if cfg.signal_file.is_none() {
                return Err(Error::InvalidParameter("file family needs signal_file".into()));
            }
        }
        family => {
            if cfg.k.is_empty() {
                return Err(Error::InvalidParameter("k must list at least one sparsity".into()));
            }
            for &k in &cfg.k {
                if k == 0 || k > a.cols() {
                    return Err(Error::KOutOfRange { k, dim: a.cols() });
                }
                let t = cfg.t_max.for_k(k);
                if t > max_t {
                    return Err(Error::TMaxOutOfRange { t_max: t, max: max_t });
                }
            }
            if family == SignalFamily::AlphaDecaying {
                let alpha = cfg.alpha.ok_or_else(|| Error::InvalidParameter("alpha-decaying family needs alpha".into()))?;
                make_alpha_decaying(a.cols(), alpha)?;
            }
        }
    }
    Ok(())
}

/// Runs every trial of `cfg` without writing any files.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let a = cfg.dictionary_spec.build()?;
    validate(cfg, &a)?;
    let mu = coherence(&a).mu;

    let file_signal = match cfg.signal_family {
        SignalFamily::File => Some(read_signal(cfg.signal_file.as_ref().expect("validated"))?),
        _ => None,
    };
    let ks: Vec<usize> = match &file_signal {
        Some(x) => {
            if x.dim() != a.cols() {
                return Err(Error::DimensionMismatch { expected: a.cols(), found: x.dim() });
            }
            vec![sparsity(x, 0.0).max(1)]
        }
        None => cfg.k.clone(),
    };
    let jobs: Vec<(usize, usize)> = ks
        .iter()
        .enumerate()
        .flat_map(|(ki, &k)| (0..cfg.trial_count).map(move |i| (ki * cfg.trial_count + i, k)))
        .collect();

    let runs: Vec<TrialRun> = jobs
        .par_iter()
        .map(|&(trial, k)| {
            let seed = trial_seed(cfg.base_seed, trial as u64);
            let x = match &file_signal {
                Some(x) => x.clone(),
                None => draw_signal(cfg.signal_family, a.cols(), k, cfg.alpha, &mut Rng::new(seed))?,
            };
            let t_max = cfg.t_max.for_k(k).min(a.rows().min(a.cols()));
            evaluate_trial(&a, mu, x, t_max, trial, seed)
        })
        .collect::<Result<Vec<_>>>()?;

    let violations = runs.iter().filter(|r| r.violates_guarantee()).map(|r| r.record.trial).collect();
    let records: Vec<TrialRecord> = runs.into_iter().map(|r| r.record).collect();
    let summary = summarize(&records);
    Ok(ExperimentOutcome { mu, records, summary, violations })
}

/// Per-k rates, in order of first appearance of each `k`.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut ks: Vec<usize> = Vec::new();
    for r in records {
        if !ks.contains(&r.k) {
            ks.push(r.k);
        }
    }
    ks.into_iter()
        .map(|k| {
            let rows: Vec<&TrialRecord> = records.iter().filter(|r| r.k == k).collect();
            let n = rows.len() as f64;
            let rate = |f: fn(&TrialRecord) -> bool| rows.iter().filter(|r| f(r)).count() as f64 / n;
            SummaryRow {
                k,
                delta_certified_rate: rate(|r| r.certified),
                classical_certified_rate: rate(|r| r.classically_certified),
                exact_recovery_rate: rate(|r| r.exact_recovery),
            }
        })
        .collect()
}

/// Per-trial CSV. Floats use shortest round-trip formatting.
pub fn records_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from("trial,seed,k,t_max,certified,classically_certified,exact_recovery,residual_norm\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:?}",
            r.trial, r.seed, r.k, r.t_max, r.certified, r.classically_certified, r.exact_recovery, r.residual_norm
        );
    }
    out
}

pub fn summary_csv(summary: &[SummaryRow]) -> String {
    let mut out = String::from("k,delta_certified_rate,classical_certified_rate,exact_recovery_rate\n");
    for s in summary {
        let _ = writeln!(
            out,
            "{},{:?},{:?},{:?}",
            s.k, s.delta_certified_rate, s.classical_certified_rate, s.exact_recovery_rate
        );
    }
    out
}

/// Writes both CSVs, creating parent directories as needed.
pub fn write_outputs(trials_path: &Path, summary_path: &Path, outcome: &ExperimentOutcome) -> Result<()> {
    for p in [trials_path, summary_path] {
        if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(trials_path, records_csv(&outcome.records))?;
    std::fs::write(summary_path, summary_csv(&outcome.summary))?;
    Ok(())
}
