//! Almost-sure approximation: normalized arrival times pushed through the
//! inverse finite-n tail, `p_i = mu_n^{-1}(Γ_i / Γ_{n+1})`.

use super::{continuous_base, unit_weight};
use crate::error::{domain, Result};
use crate::measures::{Atom, AtomicMeasure, BetaProcessParams};
use crate::randgen::{arrival_times, ArrivalTimes, RandomStream};
use crate::special_fn::{finite_tail_inverse_point, LevyTailSpec, UnitPoint};

/// Weights for arrivals `Γ_1 < … < Γ_{n+1}`, as points so that the smallest
/// keep their logarithms. Strictly decreasing in `i`.
pub fn as_weight_points(gammas: &ArrivalTimes, spec: LevyTailSpec, n: u64) -> Result<Vec<UnitPoint>> {
    if gammas.len() as u64 != n + 1 {
        return Err(domain(format!("need n + 1 = {} arrival times, got {}", n + 1, gammas.len())));
    }
    let total = gammas.last();
    gammas.as_slice()[..n as usize]
        .iter()
        .map(|&g| finite_tail_inverse_point(g / total, (total - g) / total, spec, n))
        .collect()
}

/// One path of the almost-sure approximation with `n` atoms.
pub fn sample_as(params: &BetaProcessParams, n: u64, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    let base = continuous_base(params)?;
    let spec = LevyTailSpec::new(params.c, base.mass)?;
    crate::special_fn::finite_tail_shapes(spec, n)?;
    let locations: Vec<f64> = (0..n).map(|_| base.profile.quantile(stream.uniform())).collect();
    let gammas = arrival_times(stream, n as usize + 1);
    let points = as_weight_points(&gammas, spec, n)?;
    let atoms = locations
        .into_iter()
        .zip(points)
        .map(|(loc, p)| Atom { loc, w: unit_weight(p.ln_value(), p.ln_complement()) })
        .collect();
    Ok(AtomicMeasure::new(atoms))
}
