use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lowdensity::cli::{self, CommandOutput, Format, ERROR_EXIT};

/// Density certificates and OMP recovery. Indices are zero-based.
///
/// DICT arguments accept a matrix file or identity:M, hadamard:M,
/// identity-hadamard:M, random:M:N:SEED.
#[derive(Parser)]
#[command(name = "lowdensity", version)]
struct Cli {
    /// Write the report to PATH instead of stdout (experiment: per-trial CSV path).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// RNG seed (probe-kernel seed; experiment base_seed override).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Compact JSON output; experiment prints its summary as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// δ-density, γ, σ and sparsity of a signal file.
    Density { signal: PathBuf },
    /// Coherence of a dictionary, and mutual coherence with a second one.
    Coherence {
        dict: String,
        #[arg(long = "with")]
        other: Option<String>,
    },
    #[command(subcommand)]
    Certify(Certify),
    /// Runs OMP on a measurement file and prints the trace.
    RunOmp {
        dict: String,
        measurement: PathBuf,
        #[arg(long)]
        t_max: usize,
        #[arg(long)]
        residual_tol: Option<f64>,
    },
    /// Random search for low-density kernel vectors.
    ProbeKernel {
        dict: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Monte-Carlo recovery experiment from a JSON config.
    Experiment { config: PathBuf },
}

#[derive(Subcommand)]
enum Certify {
    /// δ(x) < 1 + 1/μ certifies Ax ≠ 0.
    Kernel { dict: String, signal: PathBuf },
    /// Density uncertainty relation for Ax = Bz.
    Uncertainty { dict_a: String, dict_b: String, x: PathBuf, z: PathBuf },
    /// Density-based OMP recovery guarantee.
    Omp {
        dict: String,
        signal: PathBuf,
        #[arg(long)]
        t_max: usize,
    },
}

fn dispatch(cli: &Cli) -> lowdensity::Result<CommandOutput> {
    let fmt = Format { json: cli.json };
    match &cli.command {
        Command::Density { signal } => cli::density(signal, fmt),
        Command::Coherence { dict, other } => cli::coherence_cmd(dict, other.as_deref(), fmt),
        Command::Certify(Certify::Kernel { dict, signal }) => cli::certify_kernel(dict, signal, fmt),
        Command::Certify(Certify::Uncertainty { dict_a, dict_b, x, z }) => {
            cli::certify_uncertainty(dict_a, dict_b, x, z, fmt)
        }
        Command::Certify(Certify::Omp { dict, signal, t_max }) => cli::certify_omp(dict, signal, *t_max, fmt),
        Command::RunOmp { dict, measurement, t_max, residual_tol } => {
            cli::run_omp(dict, measurement, *t_max, *residual_tol, fmt)
        }
        Command::ProbeKernel { dict, trials } => cli::probe_kernel(dict, *trials, cli.seed.unwrap_or(0), fmt),
        Command::Experiment { config } => cli::experiment(config, cli.out.as_deref(), cli.seed, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(ERROR_EXIT as u8);
        }
    };
    let to_file = cli.out.as_ref().filter(|_| !matches!(cli.command, Command::Experiment { .. }));
    match to_file {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.body) {
                eprintln!("error: {e}");
                return ExitCode::from(ERROR_EXIT as u8);
            }
        }
        None => print!("{}", out.body),
    }
    ExitCode::from(out.verdict.exit_code() as u8)
}
