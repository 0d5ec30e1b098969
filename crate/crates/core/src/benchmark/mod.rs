//! Monte Carlo comparison of the path constructions through their first two
//! moments on a grid, and the five-row error table built from it.

mod report;

pub use report::{BenchReport, BenchRow};

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{parameter, Result};
use crate::measures::{base_uniform01, AtomicMeasure, BaseMeasure, BetaProcessParams};
use crate::randgen::{derive_substream, salted_seed, RandomStream};
use crate::samplers::{sample, Partition, SamplerSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub c: f64,
    pub base: BaseMeasure,
    pub grid: Vec<f64>,
    /// Number of independent paths `M`.
    pub paths: usize,
    pub master_seed: u64,
    pub specs: Vec<SamplerSpec>,
    /// Worker threads; `None` uses the global rayon pool.
    #[serde(default)]
    pub workers: Option<usize>,
}

/// The five settings of the reference comparison, in its row order.
pub fn reference_specs() -> Vec<SamplerSpec> {
    vec![
        SamplerSpec::Dls { partition: Partition::Uniform { cells: 200 }, n: 200 },
        SamplerSpec::LeeKim { epsilon: 0.01 },
        SamplerSpec::Lee { n: 200, epsilon: 0.05 },
        SamplerSpec::Pc { n: 200 },
        SamplerSpec::As { n: 200 },
    ]
}

/// `0.1, 0.2, …, 1.0`.
pub fn default_grid() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self { c: 2.0, base: base_uniform01(), grid: default_grid(), paths: 3000, master_seed: 0, specs: reference_specs(), workers: None }
    }
}

impl BenchConfig {
    pub fn params(&self) -> Result<BetaProcessParams> {
        BetaProcessParams::new(self.c, self.base.clone())
    }

    pub fn validate(&self) -> Result<()> {
        self.params()?;
        if self.grid.is_empty() {
            return Err(parameter("grid must be nonempty"));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(parameter("grid must be strictly increasing"));
        }
        let (lo, hi) = self.base.support();
        if let Some(x) = self.grid.iter().find(|&&x| !(x >= lo && x <= hi)) {
            return Err(parameter(format!("grid point {x} lies outside the base support [{lo}, {hi}]")));
        }
        if self.paths == 0 {
            return Err(parameter("number of paths must be positive"));
        }
        if self.workers == Some(0) {
            return Err(parameter("workers must be positive"));
        }
        Ok(())
    }
}

/// Per-grid-point sample mean and standard deviation of `B(x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub grid: Vec<f64>,
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
    /// False when `M = 1`; `sd` is then reported as zero.
    pub sd_defined: bool,
}

impl Moments {
    fn from_evaluations(grid: &[f64], evals: &[Vec<f64>]) -> Self {
        let m = evals.len() as f64;
        let k = grid.len();
        let mut mean = vec![0.0; k];
        for row in evals {
            for (acc, v) in mean.iter_mut().zip(row) {
                *acc += v;
            }
        }
        mean.iter_mut().for_each(|v| *v /= m);
        let sd_defined = evals.len() > 1;
        let sd = if sd_defined {
            (0..k)
                .map(|j| {
                    let ss: f64 = evals.iter().map(|row| (row[j] - mean[j]).powi(2)).sum();
                    (ss / (m - 1.0)).sqrt()
                })
                .collect()
        } else {
            vec![0.0; k]
        };
        Moments { grid: grid.to_vec(), mean, sd, sd_defined }
    }
}

/// Salt that gives each configured algorithm its own family of substreams.
pub fn algorithm_salt(spec: &SamplerSpec) -> String {
    format!("{}:{}", spec.id(), spec.params_label())
}

/// Moments of `M` paths from `draw`, path `r` drawn from substream `r` of `seed`.
///
/// Paths may be produced in any order on any worker; the reduction runs over
/// replication indices, so the result does not depend on scheduling.
pub fn empirical_moments_with<F>(grid: &[f64], paths: usize, seed: u64, workers: Option<usize>, draw: F) -> Result<Moments>
where
    F: Fn(&mut RandomStream) -> Result<AtomicMeasure> + Sync,
{
    let run = || {
        (0..paths as u64)
            .into_par_iter()
            .map(|r| {
                let path = draw(&mut derive_substream(seed, r))?;
                Ok(grid.iter().map(|&x| path.eval(x)).collect())
            })
            .collect::<Result<Vec<Vec<f64>>>>()
    };
    let evals = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| parameter(format!("cannot start {n} workers: {e}")))?
            .install(run)?,
        None => run()?,
    };
    Ok(Moments::from_evaluations(grid, &evals))
}

pub fn empirical_moments(spec: &SamplerSpec, cfg: &BenchConfig) -> Result<Moments> {
    cfg.validate()?;
    let params = cfg.params()?;
    spec.validate(&params)?;
    let seed = salted_seed(cfg.master_seed, &algorithm_salt(spec));
    empirical_moments_with(&cfg.grid, cfg.paths, seed, cfg.workers, |s| sample(spec, &params, s))
}

/// `max_x |mean(x) − B0(x)|`.
pub fn max_mean_error(moments: &Moments, base: &BaseMeasure) -> f64 {
    moments.grid.iter().zip(&moments.mean).map(|(&x, m)| (m - base.cdf(x)).abs()).fold(0.0, f64::max)
}

/// `max_x |sd(x) − sqrt(B0(x) / (c + 1))|`.
pub fn max_sd_error(moments: &Moments, c: f64, base: &BaseMeasure) -> f64 {
    moments.grid.iter().zip(&moments.sd).map(|(&x, s)| (s - (base.cdf(x) / (c + 1.0)).sqrt()).abs()).fold(0.0, f64::max)
}

/// Exact `Var[B(x)]` under the finite approximation with `n` atoms of law
/// `Beta(cγ/n, c(1 − γ/n))` at locations drawn from the normalized base `F`:
/// `F(x) (γ(1 − γ/n)/(c + 1) + γ²/n) − γ² F(x)² / n`.
pub fn pc_variance(x: f64, c: f64, base: &BaseMeasure, n: u64) -> f64 {
    let gamma = base.mass();
    let f = base.cdf(x) / gamma;
    let n = n as f64;
    f * (gamma * (1.0 - gamma / n) / (c + 1.0) + gamma * gamma / n) - gamma * gamma * f * f / n
}

/// One row per configured algorithm. A failing algorithm is recorded in its
/// row and the remaining rows still run.
pub fn run_comparison(cfg: &BenchConfig) -> Result<BenchReport> {
    cfg.validate()?;
    let rows = cfg
        .specs
        .iter()
        .map(|spec| {
            let start = Instant::now();
            let outcome = empirical_moments(spec, cfg);
            let wall_time_s = start.elapsed().as_secs_f64();
            match outcome {
                Ok(m) => BenchRow {
                    algorithm: spec.id().to_string(),
                    params: spec.params_label(),
                    max_mean_error: Some(max_mean_error(&m, &cfg.base)),
                    max_sd_error: Some(max_sd_error(&m, cfg.c, &cfg.base)),
                    wall_time_s,
                    error: None,
                },
                Err(e) => BenchRow {
                    algorithm: spec.id().to_string(),
                    params: spec.params_label(),
                    max_mean_error: None,
                    max_sd_error: None,
                    wall_time_s,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(BenchReport { rows })
}
