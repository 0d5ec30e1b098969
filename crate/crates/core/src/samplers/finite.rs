//! Finite-dimensional beta approximation with n i.i.d. atoms.

use super::{continuous_base, unit_weight};
use crate::error::Result;
use crate::measures::{Atom, AtomicMeasure, BetaProcessParams};
use crate::randgen::RandomStream;
use crate::special_fn::{finite_tail_shapes, LevyTailSpec};

/// `B_n = Σ_{i≤n} p_i δ_{ω_i}` with `p_i ~ Beta(cγ/n, c(1 − γ/n))` and `ω_i ~ B0/γ`.
pub fn sample_pc(params: &BetaProcessParams, n: u64, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    let base = continuous_base(params)?;
    let (a, b) = finite_tail_shapes(LevyTailSpec::new(params.c, base.mass)?, n)?;
    let weights = (0..n)
        .map(|_| stream.ln_beta_pair(a, b).map(|(lx, ly)| unit_weight(lx, ly)))
        .collect::<Result<Vec<_>>>()?;
    let atoms = weights
        .into_iter()
        .map(|w| Atom { loc: base.profile.quantile(stream.uniform()), w })
        .collect();
    Ok(AtomicMeasure::new(atoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::make_stream;
    use crate::samplers::test_support::{mean_sd, reference_params, totals};

    #[test]
    fn exactly_n_atoms() {
        let path = sample_pc(&reference_params(), 200, &mut make_stream(1)).unwrap();
        assert_eq!(path.len(), 200);
    }

    #[test]
    fn n_must_exceed_mass() {
        let params = BetaProcessParams::uniform(2.0, 3.0).unwrap();
        assert!(matches!(sample_pc(&params, 3, &mut make_stream(0)), Err(crate::Error::Parameter(_))));
    }

    #[test]
    fn shapes_one_one_give_uniform_weights() {
        // c = 2, γ = 1, n = 2 → Beta(1, 1)
        let params = reference_params();
        let mut s = make_stream(5);
        let w: Vec<f64> = (0..5000).flat_map(|_| sample_pc(&params, 2, &mut s).unwrap().weights().collect::<Vec<_>>()).collect();
        let (mean, sd) = mean_sd(&w);
        assert!((mean - 0.5).abs() < 0.01, "{mean}");
        assert!((sd - (1.0f64 / 12.0).sqrt()).abs() < 0.01, "{sd}");
    }

    #[test]
    fn single_atom_symmetric_law() {
        // n = 1, γ = 0.5 → Beta(c/2, c/2), mean 1/2
        let params = BetaProcessParams::uniform(3.0, 0.5).unwrap();
        let mut s = make_stream(6);
        let w: Vec<f64> = (0..5000).map(|_| {
            let p = sample_pc(&params, 1, &mut s).unwrap();
            assert_eq!(p.len(), 1);
            p.atoms[0].w
        }).collect();
        let (mean, sd) = mean_sd(&w);
        assert!((mean - 0.5).abs() < 0.01);
        // Var Beta(1.5, 1.5) = 1/16
        assert!((sd - 0.25).abs() < 0.01);
    }

    #[test]
    fn mean_total_mass_is_gamma() {
        let params = reference_params();
        let mut s = make_stream(7);
        let paths: Vec<_> = (0..3000).map(|_| sample_pc(&params, 200, &mut s).unwrap()).collect();
        let (mean, _) = mean_sd(&totals(&paths));
        assert!((mean - 1.0).abs() < 0.04, "{mean}");
    }
}
