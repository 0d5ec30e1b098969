//! Lee's algorithm: n Beta(ε, c) proposals thinned by Poisson counts whose
//! rates carry the importance ratio to the Lévy density.

use super::{continuous_base, Sampled};
use crate::error::{parameter, Result};
use crate::measures::{Atom, AtomicMeasure, BetaProcessParams};
use crate::randgen::RandomStream;

/// `γ b(x:1,c) / (n x b(x:ε,c))`, with `b(·:a,b)` the Beta density.
///
/// The `(1 − x)^{c−1}` factors cancel, leaving
/// `γ c Γ(ε) Γ(c) x^{−ε} / (n Γ(ε + c))`; `ln_x` may lie below the `f64` range.
pub fn lee_poisson_rate(ln_x: f64, epsilon: f64, c: f64, gamma: f64, n: u64) -> f64 {
    let ln_rate = gamma.ln() + c.ln() + libm::lgamma(epsilon) + libm::lgamma(c) - libm::lgamma(epsilon + c) - (n as f64).ln() - epsilon * ln_x;
    ln_rate.exp()
}

pub(super) fn sample_lee_counted(params: &BetaProcessParams, n: u64, epsilon: f64, stream: &mut RandomStream) -> Result<Sampled> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(parameter(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if n == 0 {
        return Err(parameter("n must be positive"));
    }
    let base = continuous_base(params)?;
    let c = params.c;
    let locations: Vec<f64> = (0..n).map(|_| base.profile.quantile(stream.uniform())).collect();
    let proposals = (0..n).map(|_| stream.ln_beta_pair(epsilon, c)).collect::<Result<Vec<_>>>()?;
    let mut atoms = Vec::new();
    let mut dropped = 0;
    for (loc, (ln_x, ln_y)) in locations.into_iter().zip(proposals) {
        let y = stream.poisson(lee_poisson_rate(ln_x, epsilon, c, base.mass, n))?;
        let x = if ln_y > -std::f64::consts::LN_2 { ln_x.exp() } else { -ln_y.exp_m1() };
        let w = x * y as f64;
        if w > 0.0 {
            atoms.push(Atom { loc, w });
        } else {
            dropped += 1;
        }
    }
    Ok(Sampled { path: AtomicMeasure::new(atoms), dropped_zero_weights: dropped })
}

/// One path `Σ x_i y_i δ_{ω_i}`; atoms with `y_i = 0` are dropped.
pub fn sample_lee(params: &BetaProcessParams, n: u64, epsilon: f64, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    Ok(sample_lee_counted(params, n, epsilon, stream)?.path)
}
