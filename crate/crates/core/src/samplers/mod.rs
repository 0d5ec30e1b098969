//! Path constructions for `BP(c, B0)`.
//!
//! | id            | construction                                             |
//! |---------------|----------------------------------------------------------|
//! | `PC`          | n i.i.d. Beta(cγ/n, c(1 − γ/n)) weights                  |
//! | `AS`          | normalized arrivals through the finite-n beta quantile   |
//! | `FK`          | Ferguson–Klass series, truncated at N jumps              |
//! | `STICK`       | stick-breaking rounds, truncated at R rounds             |
//! | `POISSON_REP` | gamma-time or exponential-time rounds                    |
//! | `DLS`         | Damien–Laud–Smith compound increments on a partition     |
//! | `LEE_KIM`     | Poisson(cγ/ε) jumps with Beta(ε, c) sizes                |
//! | `LEE`         | importance-weighted Poisson thinning of Beta(ε, c) draws |
//!
//! Every sampler reads its randomness from one [`RandomStream`], so equal
//! `(spec, params, seed)` give identical paths.

mod almost_sure;
mod dls;
mod ferguson_klass;
mod finite;
mod lee;
mod lee_kim;
mod stick;

pub use almost_sure::{as_weight_points, sample_as};
pub use dls::{dls_increment, sample_dls};
pub use ferguson_klass::{fk_weight_points, sample_fk};
pub use finite::sample_pc;
pub use lee::{lee_poisson_rate, sample_lee};
pub use lee_kim::sample_lee_kim;
pub use stick::{default_rounds, exponential_time_weight, sample_poisson_rep, sample_stick};

use serde::{Deserialize, Serialize};

use crate::error::{parameter, Result};
use crate::measures::{AtomicMeasure, BetaProcessParams, ContinuousBase};
use crate::randgen::RandomStream;

/// Weight form of the Poisson-process representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoissonVariant {
    /// Weights `V e^{-T}` with `T ~ Gamma(i - 1, c)`.
    GammaTime,
    /// Telescoping weights `e^{-Γ_{i-1}/c} - e^{-Γ_i/c}`.
    ExponentialTime,
}

/// Cell boundaries `ω_0 < … < ω_m` for the Damien–Laud–Smith sampler.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Partition {
    /// `cells` equal-width cells spanning the base support.
    Uniform { cells: usize },
    Points(Vec<f64>),
}

impl Partition {
    pub fn resolve(&self, base: &ContinuousBase) -> Result<Vec<f64>> {
        let (lo, hi) = base.profile.support();
        let points = match self {
            Partition::Uniform { cells } => {
                if *cells == 0 {
                    return Err(parameter("partition needs at least one cell"));
                }
                let m = *cells as f64;
                (0..=*cells).map(|i| if i == *cells { hi } else { lo + (hi - lo) * i as f64 / m }).collect()
            }
            Partition::Points(p) => p.clone(),
        };
        if points.len() < 2 {
            return Err(parameter("partition needs at least two points"));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(parameter("partition points must be strictly increasing"));
        }
        if points[0] > lo || points[points.len() - 1] < hi {
            return Err(parameter(format!("partition [{}, {}] does not cover the base support [{lo}, {hi}]", points[0], points[points.len() - 1])));
        }
        Ok(points)
    }

    pub fn cells(&self) -> usize {
        match self {
            Partition::Uniform { cells } => *cells,
            Partition::Points(p) => p.len().saturating_sub(1),
        }
    }
}

/// A construction together with its truncation or approximation level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum SamplerSpec {
    Pc { n: u64 },
    As { n: u64 },
    Fk { jumps: usize },
    Stick { rounds: usize },
    PoissonRep { rounds: usize, variant: PoissonVariant },
    Dls { partition: Partition, n: u64 },
    LeeKim { epsilon: f64 },
    Lee { n: u64, epsilon: f64 },
}

impl SamplerSpec {
    pub fn id(&self) -> &'static str {
        match self {
            SamplerSpec::Pc { .. } => "PC",
            SamplerSpec::As { .. } => "AS",
            SamplerSpec::Fk { .. } => "FK",
            SamplerSpec::Stick { .. } => "STICK",
            SamplerSpec::PoissonRep { .. } => "POISSON_REP",
            SamplerSpec::Dls { .. } => "DLS",
            SamplerSpec::LeeKim { .. } => "LEE_KIM",
            SamplerSpec::Lee { .. } => "LEE",
        }
    }

    /// Parameter column for reports.
    pub fn params_label(&self) -> String {
        match self {
            SamplerSpec::Pc { n } | SamplerSpec::As { n } => format!("n={n}"),
            SamplerSpec::Fk { jumps } => format!("N={jumps}"),
            SamplerSpec::Stick { rounds } => format!("R={rounds}"),
            SamplerSpec::PoissonRep { rounds, variant } => {
                let v = match variant {
                    PoissonVariant::GammaTime => "gamma-time",
                    PoissonVariant::ExponentialTime => "exp-time",
                };
                format!("R={rounds} {v}")
            }
            SamplerSpec::Dls { partition, n } if partition.cells() as u64 == *n => format!("m=n={n}"),
            SamplerSpec::Dls { partition, n } => format!("m={} n={n}", partition.cells()),
            SamplerSpec::LeeKim { epsilon } => format!("eps={epsilon}"),
            SamplerSpec::Lee { n, epsilon } => format!("n={n} eps={epsilon}"),
        }
    }

    /// Checks the construction's own parameters against `params`.
    pub fn validate(&self, params: &BetaProcessParams) -> Result<()> {
        let gamma = params.mass();
        let check_eps = |eps: f64| {
            if eps > 0.0 && eps < 1.0 {
                Ok(())
            } else {
                Err(parameter(format!("epsilon must lie in (0, 1), got {eps}")))
            }
        };
        let positive = |name: &str, v: u64| {
            if v >= 1 {
                Ok(())
            } else {
                Err(parameter(format!("{name} must be positive")))
            }
        };
        match self {
            SamplerSpec::Pc { n } | SamplerSpec::As { n } => {
                if !(*n as f64 > gamma) {
                    return Err(parameter(format!("n = {n} must exceed the base mass {gamma}")));
                }
                Ok(())
            }
            SamplerSpec::Fk { jumps } => positive("number of jumps", *jumps as u64),
            SamplerSpec::Stick { rounds } | SamplerSpec::PoissonRep { rounds, .. } => positive("rounds", *rounds as u64),
            SamplerSpec::Dls { partition, n } => {
                positive("n", *n)?;
                partition.resolve(continuous_base(params)?).map(|_| ())
            }
            SamplerSpec::LeeKim { epsilon } => check_eps(*epsilon),
            SamplerSpec::Lee { n, epsilon } => {
                positive("n", *n)?;
                check_eps(*epsilon)
            }
        }
    }
}

/// A path plus the count of zero-weight atoms removed from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub path: AtomicMeasure,
    pub dropped_zero_weights: usize,
}

impl From<AtomicMeasure> for Sampled {
    fn from(path: AtomicMeasure) -> Self {
        Sampled { path, dropped_zero_weights: 0 }
    }
}

/// Draws one path with the construction named by `spec`.
pub fn sample(spec: &SamplerSpec, params: &BetaProcessParams, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    Ok(sample_with_diagnostics(spec, params, stream)?.path)
}

pub fn sample_with_diagnostics(spec: &SamplerSpec, params: &BetaProcessParams, stream: &mut RandomStream) -> Result<Sampled> {
    spec.validate(params)?;
    match spec {
        SamplerSpec::Pc { n } => sample_pc(params, *n, stream).map(Into::into),
        SamplerSpec::As { n } => sample_as(params, *n, stream).map(Into::into),
        SamplerSpec::Fk { jumps } => sample_fk(params, *jumps, stream).map(Into::into),
        SamplerSpec::Stick { rounds } => sample_stick(params, *rounds, stream).map(Into::into),
        SamplerSpec::PoissonRep { rounds, variant } => sample_poisson_rep(params, *rounds, stream, *variant).map(Into::into),
        SamplerSpec::Dls { partition, n } => dls::sample_dls_counted(params, partition, *n, stream),
        SamplerSpec::LeeKim { epsilon } => sample_lee_kim(params, *epsilon, stream).map(Into::into),
        SamplerSpec::Lee { n, epsilon } => lee::sample_lee_counted(params, *n, *epsilon, stream),
    }
}

pub(crate) fn continuous_base(params: &BetaProcessParams) -> Result<&ContinuousBase> {
    if !params.base.is_continuous() {
        return Err(parameter("this sampler needs a continuous base measure"));
    }
    Ok(params.base.continuous_part())
}

/// Weight from `(ln w, ln(1 - w))`, clamped into the open unit interval.
///
/// Tiny-shape beta laws put real mass below `f64::MIN_POSITIVE`; those
/// weights are stored as `f64::MIN_POSITIVE` and contribute nothing
/// measurable to any path functional.
pub(crate) fn unit_weight(ln_w: f64, ln_1m_w: f64) -> f64 {
    let w = if ln_1m_w > -std::f64::consts::LN_2 { ln_w.exp() } else { -ln_1m_w.exp_m1() };
    w.clamp(f64::MIN_POSITIVE, 1.0f64.next_down())
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::measures::{AtomicMeasure, BetaProcessParams};

    pub fn reference_params() -> BetaProcessParams {
        BetaProcessParams::uniform(2.0, 1.0).unwrap()
    }

    pub fn mean_sd(values: &[f64]) -> (f64, f64) {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, var.sqrt())
    }

    pub fn totals(paths: &[AtomicMeasure]) -> Vec<f64> {
        paths.iter().map(AtomicMeasure::total_mass).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::reference_params;
    use super::*;
    use crate::randgen::make_stream;

    fn all_specs() -> Vec<SamplerSpec> {
        vec![
            SamplerSpec::Pc { n: 50 },
            SamplerSpec::As { n: 50 },
            SamplerSpec::Fk { jumps: 50 },
            SamplerSpec::Stick { rounds: 10 },
            SamplerSpec::PoissonRep { rounds: 10, variant: PoissonVariant::GammaTime },
            SamplerSpec::PoissonRep { rounds: 10, variant: PoissonVariant::ExponentialTime },
            SamplerSpec::Dls { partition: Partition::Uniform { cells: 20 }, n: 20 },
            SamplerSpec::LeeKim { epsilon: 0.05 },
            SamplerSpec::Lee { n: 50, epsilon: 0.05 },
        ]
    }

    #[test]
    fn determinism_for_every_construction() {
        let params = reference_params();
        for spec in all_specs() {
            let a = sample(&spec, &params, &mut make_stream(99)).unwrap();
            let b = sample(&spec, &params, &mut make_stream(99)).unwrap();
            assert_eq!(a, b, "{}", spec.id());
        }
    }

    #[test]
    fn weight_ranges_per_construction() {
        let params = reference_params();
        for spec in all_specs() {
            for seed in 0..20 {
                let path = sample(&spec, &params, &mut make_stream(seed)).unwrap();
                for w in path.weights() {
                    match spec {
                        // compound sums: positive, not bounded by one
                        SamplerSpec::Dls { .. } | SamplerSpec::Lee { .. } => assert!(w > 0.0 && w.is_finite()),
                        _ => assert!(w > 0.0 && w < 1.0, "{} weight {w}", spec.id()),
                    }
                }
            }
        }
    }

    #[test]
    fn spec_serde_round_trip() {
        for spec in all_specs() {
            let text = serde_json::to_string(&spec).unwrap();
            assert_eq!(serde_json::from_str::<SamplerSpec>(&text).unwrap(), spec);
        }
    }

    #[test]
    fn validation() {
        let params = reference_params();
        assert!(SamplerSpec::As { n: 1 }.validate(&params).is_err());
        assert!(SamplerSpec::Pc { n: 0 }.validate(&params).is_err());
        assert!(SamplerSpec::LeeKim { epsilon: 1.0 }.validate(&params).is_err());
        assert!(SamplerSpec::Lee { n: 10, epsilon: 0.0 }.validate(&params).is_err());
        assert!(SamplerSpec::Fk { jumps: 0 }.validate(&params).is_err());
        assert!(SamplerSpec::Stick { rounds: 0 }.validate(&params).is_err());
        let short = SamplerSpec::Dls { partition: Partition::Points(vec![0.0, 0.5]), n: 10 };
        assert!(short.validate(&params).is_err());
        let empty = SamplerSpec::Dls { partition: Partition::Points(vec![]), n: 10 };
        assert!(matches!(empty.validate(&params), Err(crate::Error::Parameter(_))));
    }

    #[test]
    fn labels() {
        assert_eq!(SamplerSpec::Dls { partition: Partition::Uniform { cells: 200 }, n: 200 }.params_label(), "m=n=200");
        assert_eq!(SamplerSpec::Lee { n: 200, epsilon: 0.05 }.params_label(), "n=200 eps=0.05");
    }
}
