//! Runs a recovery experiment in-process and prints its summary.
//!
//! `cargo run --example experiment_harness -- crates/core/configs/alpha_decaying.json`
//! uses a config file; without arguments a small built-in sweep runs.

use std::path::PathBuf;

use lowdensity::experiment::{run_experiment, summary_csv, DictionarySpec, ExperimentConfig, SignalFamily, TMaxPolicy};

fn main() -> lowdensity::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig {
            dictionary_spec: DictionarySpec::IdentityHadamard { m: 64 },
            signal_family: SignalFamily::AlphaDecaying,
            k: (1..=9).collect(),
            alpha: Some(0.05),
            signal_file: None,
            trial_count: 50,
            base_seed: 1,
            t_max: TMaxPolicy::EqualToK,
            output: PathBuf::from("unused.csv"),
            summary_output: None,
        },
    };
    let outcome = run_experiment(&cfg)?;
    println!("mu = {}", outcome.mu);
    print!("{}", summary_csv(&outcome.summary));
    println!("soundness violations: {}", outcome.violations.len());
    Ok(())
}
