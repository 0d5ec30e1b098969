//! Batch front end for the `betaproc` library.
//!
//! ```text
//! betaproc sample --alg as --c 2 --mass 1 --n 200 --seed 7 --out path.json
//! betaproc bench --paths 3000 --format md
//! betaproc posterior-demo --m 3 --seed 1
//! ```
//!
//! Exit codes: 0 on success, 1 on a numeric or per-row failure, 2 on a usage error.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use config::ConfigFile;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "BETAPROC_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<betaproc::Error> for CliError {
    fn from(e: betaproc::Error) -> Self {
        match e {
            betaproc::Error::Parameter(_) | betaproc::Error::Domain(_) | betaproc::Error::Format(_) => CliError::Usage(e.to_string()),
            betaproc::Error::Numeric { .. } | betaproc::Error::Io(_) => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "betaproc", version, about = "Beta process path sampling, moment benchmarks and posterior updates")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw sample paths with one construction
    Sample(SampleArgs),
    /// Compare constructions by their maximum mean and s.d. errors on a grid
    Bench(BenchArgs),
    /// Observe a prior path through Bernoulli draws and sample the posterior
    PosteriorDemo(PosteriorArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    /// Finite beta approximation
    Pc,
    /// Almost-sure approximation
    As,
    /// Ferguson–Klass series
    Fk,
    /// Stick-breaking
    Stick,
    /// Poisson representation, gamma-time weights
    Prep5,
    /// Poisson representation, exponential-time weights
    Prep6,
    /// Damien–Laud–Smith
    Dls,
    /// Lee–Kim
    Leekim,
    /// Lee
    Lee,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

/// Model, seed and output options shared by every command.
#[derive(Debug, Clone, Args)]
struct ModelArgs {
    /// key = value file; flags given on the command line take precedence
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Concentration c [default: 2]
    #[arg(long)]
    c: Option<f64>,
    /// Base mass gamma [default: 1]
    #[arg(long)]
    mass: Option<f64>,
    /// Two-column CSV (x, F(x)) of a piecewise-linear base CDF; default uniform on [0, 1]
    #[arg(long, value_name = "FILE")]
    base_cdf: Option<PathBuf>,
    /// Master seed [default: 0]
    #[arg(long, env = SEED_ENV)]
    seed: Option<u64>,
    /// Output file; standard output when absent
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Construction and its truncation level.
#[derive(Debug, Clone, Args)]
struct AlgArgs {
    #[arg(long, value_enum)]
    alg: Option<Alg>,
    /// Atoms for pc/as, inner draws for dls, proposals for lee [default: 200]
    #[arg(long)]
    n: Option<u64>,
    /// Rounds for stick/prep5/prep6 [default: enough for 1e-6 expected leftover mass]
    #[arg(long)]
    rounds: Option<usize>,
    /// Series terms for fk (required)
    #[arg(long)]
    jumps: Option<usize>,
    /// Epsilon for leekim [default: 0.01] and lee [default: 0.05]
    #[arg(long)]
    eps: Option<f64>,
    /// Equal-width cells for dls [default: 200]
    #[arg(long)]
    partitions: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    alg: AlgArgs,
    /// Number of paths [default: 1]
    #[arg(long)]
    paths: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct BenchArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Benchmark only this construction; the five reference settings otherwise
    #[command(flatten)]
    alg: AlgArgs,
    /// Paths per construction [default: 3000]
    #[arg(long)]
    paths: Option<usize>,
    /// Comma-separated evaluation points [default: 0.1,0.2,...,1.0]
    #[arg(long)]
    grid: Option<String>,
    /// Worker threads [default: all cores]
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct PosteriorArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of Bernoulli-process observations [default: 5]
    #[arg(long)]
    m: Option<usize>,
    /// Atoms in the prior and posterior continuous parts [default: 200]
    #[arg(long)]
    n: Option<u64>,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Sample(a) => commands::sample(&a, stdout, stderr),
        Command::Bench(a) => commands::bench(&a, stdout, stderr),
        Command::PosteriorDemo(a) => commands::posterior_demo(&a, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
