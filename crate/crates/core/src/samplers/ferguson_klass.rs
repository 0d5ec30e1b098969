//! Ferguson–Klass series `Σ mu^{-1}(Γ_i) δ_{ω_i}`, truncated after N jumps.

use super::{continuous_base, unit_weight};
use crate::error::Result;
use crate::measures::{Atom, AtomicMeasure, BetaProcessParams};
use crate::randgen::{arrival_times, ArrivalTimes, RandomStream};
use crate::special_fn::{levy_tail_inverse_point, LevyTailSpec, UnitPoint};

/// Jump sizes `mu^{-1}(Γ_i)` for the given arrivals, strictly decreasing.
pub fn fk_weight_points(gammas: &ArrivalTimes, spec: LevyTailSpec) -> Result<Vec<UnitPoint>> {
    gammas.as_slice().iter().map(|&g| levy_tail_inverse_point(g, spec)).collect()
}

pub fn sample_fk(params: &BetaProcessParams, jumps: usize, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    let base = continuous_base(params)?;
    let spec = LevyTailSpec::new(params.c, base.mass)?;
    let gammas = arrival_times(stream, jumps);
    let points = fk_weight_points(&gammas, spec)?;
    let atoms = points
        .into_iter()
        .map(|p| Atom { loc: base.profile.quantile(stream.uniform()), w: unit_weight(p.ln_value(), p.ln_complement()) })
        .collect();
    Ok(AtomicMeasure::new(atoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::make_stream;
    use crate::samplers::test_support::reference_params;

    #[test]
    fn closed_form_for_unit_concentration() {
        let spec = LevyTailSpec::new(1.0, 1.0).unwrap();
        let g = ArrivalTimes::new(vec![1.0, 2.0]).unwrap();
        let w: Vec<f64> = fk_weight_points(&g, spec).unwrap().iter().map(UnitPoint::value).collect();
        assert!((w[0] - 0.36787944117144233).abs() < 1e-12);
        assert!((w[1] - 0.1353352832366127).abs() < 1e-12);
    }

    #[test]
    fn strictly_decreasing_weights() {
        for seed in 0..10 {
            let path = sample_fk(&reference_params(), 300, &mut make_stream(seed)).unwrap();
            assert_eq!(path.len(), 300);
            let w: Vec<f64> = path.weights().collect();
            assert!(w.windows(2).all(|p| p[0] > p[1]), "seed {seed}");
        }
    }
}
