//! Seedable random streams and the elementary laws the samplers draw from.
//!
//! Streams are ChaCha8 keyed by a 64-bit seed, with the ChaCha stream id
//! selecting a substream: `derive_substream(seed, r)` for different `r`
//! gives non-overlapping keystreams, so replication `r` of an experiment can
//! run on any worker and still reproduce bit for bit.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, Open01, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha8Rng,
    seed: u64,
    index: u64,
}

/// The stream for `seed`; identical to `derive_substream(seed, 0)`.
pub fn make_stream(seed: u64) -> RandomStream {
    derive_substream(seed, 0)
}

pub fn derive_substream(seed: u64, index: u64) -> RandomStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    RandomStream { rng, seed, index }
}

/// splitmix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for an independent family of substreams labelled by `salt`.
pub fn salted_seed(master: u64, salt: &str) -> u64 {
    // FNV-1a over the label, then mixed with the master seed.
    let h = salt.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3));
    mix64(master ^ mix64(h))
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Elementary laws; gamma is parameterized by shape and rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum DistSpec {
    Uniform,
    Exponential,
    Gamma { shape: f64, rate: f64 },
    Poisson { mean: f64 },
    Beta { a: f64, b: f64 },
}

/// One draw from `spec`; Poisson counts are returned as exact integers in `f64`.
pub fn sample_dist(stream: &mut RandomStream, spec: DistSpec) -> Result<f64> {
    match spec {
        DistSpec::Uniform => Ok(stream.uniform()),
        DistSpec::Exponential => Ok(stream.exponential()),
        DistSpec::Gamma { shape, rate } => stream.gamma(shape, rate),
        DistSpec::Poisson { mean } => Ok(stream.poisson(mean)? as f64),
        DistSpec::Beta { a, b } => stream.beta(a, b),
    }
}

fn check_shape(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain(format!("{name} must be finite and positive, got {v}")));
    }
    Ok(())
}

fn ln_add_exp(x: f64, y: f64) -> f64 {
    let m = x.max(y);
    m + ((x - m).exp() + (y - m).exp()).ln()
}

impl RandomStream {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn open_uniform(&mut self) -> f64 {
        Open01.sample(&mut self.rng)
    }

    /// Exponential with mean one.
    pub fn exponential(&mut self) -> f64 {
        Exp1.sample(&mut self.rng)
    }

    /// Log of a Gamma(shape, 1) draw.
    ///
    /// Shapes below one use the exact boost `G_k = G_{k+1} U^{1/k}`, carried
    /// out in log space so that shapes near zero do not underflow.
    pub fn ln_gamma_unit(&mut self, shape: f64) -> Result<f64> {
        check_shape("gamma shape", shape)?;
        if shape >= 1.0 {
            let g = Gamma::new(shape, 1.0).map_err(|e| domain(e.to_string()))?;
            return Ok(g.sample(&mut self.rng).ln());
        }
        let g = Gamma::new(shape + 1.0, 1.0).map_err(|e| domain(e.to_string()))?;
        let boost = g.sample(&mut self.rng).ln();
        Ok(boost + self.open_uniform().ln() / shape)
    }

    /// Gamma with the given shape and rate (mean `shape / rate`).
    pub fn gamma(&mut self, shape: f64, rate: f64) -> Result<f64> {
        check_shape("gamma rate", rate)?;
        Ok(self.ln_gamma_unit(shape)?.exp() / rate)
    }

    /// `(ln X, ln(1 - X))` for `X ~ Beta(a, b)`, built from two gamma draws.
    pub fn ln_beta_pair(&mut self, a: f64, b: f64) -> Result<(f64, f64)> {
        check_shape("beta shape a", a)?;
        check_shape("beta shape b", b)?;
        let ga = self.ln_gamma_unit(a)?;
        let gb = self.ln_gamma_unit(b)?;
        let total = ln_add_exp(ga, gb);
        Ok((ga - total, gb - total))
    }

    pub fn beta(&mut self, a: f64, b: f64) -> Result<f64> {
        Ok(self.ln_beta_pair(a, b)?.0.exp())
    }

    /// Beta(1, c) by inversion: `1 - U^{1/c}`; always in `(0, 1)`.
    pub fn beta_one(&mut self, c: f64) -> Result<f64> {
        check_shape("beta shape b", c)?;
        let u = self.open_uniform();
        Ok(-(u.ln() / c).exp_m1())
    }

    /// Poisson count with the given mean (exact: inversion or transformed rejection).
    pub fn poisson(&mut self, mean: f64) -> Result<u64> {
        if !(mean >= 0.0 && mean.is_finite()) {
            return Err(domain(format!("poisson mean must be finite and nonnegative, got {mean}")));
        }
        if mean == 0.0 {
            return Ok(0);
        }
        let p = Poisson::new(mean).map_err(|e| domain(format!("poisson mean {mean}: {e}")))?;
        Ok(p.sample(&mut self.rng) as u64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}

/// Arrival times `Γ_1 < Γ_2 < …` of a unit-rate Poisson process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrivalTimes(Vec<f64>);

impl ArrivalTimes {
    /// Wraps injected arrival times after checking they are positive and strictly increasing.
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        if gammas.first().is_some_and(|g| !(*g > 0.0)) || gammas.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain("arrival times must be positive and strictly increasing"));
        }
        Ok(Self(gammas))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> f64 {
        *self.0.last().expect("arrival times are never empty when used")
    }
}

/// Cumulative sums of `count` unit exponentials.
pub fn arrival_times(stream: &mut RandomStream, count: usize) -> ArrivalTimes {
    let mut out = Vec::with_capacity(count);
    let mut total = 0.0f64;
    for _ in 0..count {
        let next = total + stream.exponential();
        // An increment below half an ulp of the running sum would tie.
        total = if next > total { next } else { total.next_up() };
        out.push(total);
    }
    ArrivalTimes(out)
}
