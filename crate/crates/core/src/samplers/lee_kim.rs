//! Lee–Kim: a Poisson(cγ/ε) number of jumps with Beta(ε, c) sizes, placed at
//! the order statistics of i.i.d. base locations.

use super::{continuous_base, unit_weight};
use crate::error::{parameter, Result};
use crate::measures::{Atom, AtomicMeasure, BetaProcessParams};
use crate::randgen::RandomStream;

pub fn sample_lee_kim(params: &BetaProcessParams, epsilon: f64, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(parameter(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let base = continuous_base(params)?;
    let c = params.c;
    let count = stream.poisson(c * base.mass / epsilon)?;
    let mut locations: Vec<f64> = (0..count).map(|_| base.profile.quantile(stream.uniform())).collect();
    // The sort does not change the law of the path; it keeps the draw order of the printed algorithm.
    locations.sort_by(f64::total_cmp);
    let atoms = locations
        .into_iter()
        .map(|loc| stream.ln_beta_pair(epsilon, c).map(|(lx, ly)| Atom { loc, w: unit_weight(lx, ly) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(AtomicMeasure::new(atoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::make_stream;
    use crate::samplers::test_support::{mean_sd, reference_params, totals};

    #[test]
    fn count_and_mass_moments() {
        let params = reference_params();
        let mut s = make_stream(31);
        let paths: Vec<_> = (0..3000).map(|_| sample_lee_kim(&params, 0.01, &mut s).unwrap()).collect();
        let counts: Vec<f64> = paths.iter().map(|p| p.len() as f64).collect();
        let (mean_count, _) = mean_sd(&counts);
        // Poisson(200): sd of the mean is 0.26
        assert!((mean_count - 200.0).abs() < 1.3, "{mean_count}");
        let (mean_mass, _) = mean_sd(&totals(&paths));
        // Wald: (cγ/ε) · ε/(ε + c) = 2/2.01
        assert!((mean_mass - 2.0 / 2.01).abs() < 0.04, "{mean_mass}");
    }

    #[test]
    fn locations_sorted() {
        let path = sample_lee_kim(&reference_params(), 0.05, &mut make_stream(2)).unwrap();
        assert!(path.atoms.windows(2).all(|w| w[0].loc <= w[1].loc));
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert!(sample_lee_kim(&reference_params(), 0.0, &mut make_stream(0)).is_err());
        assert!(sample_lee_kim(&reference_params(), 1.5, &mut make_stream(0)).is_err());
    }
}
