//! Stick-breaking rounds and the two Poisson-process forms of the same sum.
//!
//! Round `i` contributes `C_i ~ Poisson(γ)` atoms. The three forms differ
//! only in how an atom's weight is built:
//!
//! - stick:            `V_i Π_{l<i} (1 − V_l)`, `V ~ Beta(1, c)`
//! - gamma time:       `V e^{−T}`, `T ~ Gamma(i − 1, rate c)` (`T = 0` in round one)
//! - exponential time: `e^{−Γ_{i−1}/c} − e^{−Γ_i/c}`, `Γ_i` a sum of `i` unit exponentials
//!
//! All infinite sums are cut after `R` rounds; [`default_rounds`] sizes `R`
//! from the geometric decay of the expected leftover mass.

use super::{continuous_base, unit_weight, PoissonVariant};
use crate::error::{domain, Result};
use crate::measures::{Atom, AtomicMeasure, BetaProcessParams};
use crate::randgen::RandomStream;
use crate::special_fn::ln_1m_exp;

/// Expected mass left after round `R` is `γ (c / (c + 1))^R`.
const DEFAULT_RESIDUAL: f64 = 1e-6;

/// Smallest `R` with `γ (c / (c + 1))^R <= 1e-6`.
pub fn default_rounds(c: f64, gamma: f64) -> usize {
    let r = (DEFAULT_RESIDUAL / gamma).ln() / (c / (c + 1.0)).ln();
    r.ceil().max(1.0) as usize
}

/// Weight `e^{−Γ_{i−1}/c} − e^{−Γ_i/c}` for one atom of round `i = exps.len()`,
/// where `exps` holds the atom's unit exponentials `E^(1), …, E^(i)`.
pub fn exponential_time_weight(exps: &[f64], c: f64) -> Result<f64> {
    let Some((&last, earlier)) = exps.split_last() else {
        return Err(domain("exponential_time_weight needs at least one exponential"));
    };
    let ln_w = -earlier.iter().sum::<f64>() / c + ln_1m_exp(-last / c);
    Ok(unit_weight(ln_w, ln_1m_exp(ln_w)))
}

fn rounds_of_atoms<F>(params: &BetaProcessParams, rounds: usize, stream: &mut RandomStream, mut ln_weight: F) -> Result<AtomicMeasure>
where
    F: FnMut(usize, &mut RandomStream) -> Result<f64>,
{
    let base = continuous_base(params)?;
    let mut atoms = Vec::new();
    for round in 1..=rounds {
        let count = stream.poisson(base.mass)?;
        for _ in 0..count {
            let ln_w = ln_weight(round, stream)?;
            let loc = base.profile.quantile(stream.uniform());
            atoms.push(Atom { loc, w: unit_weight(ln_w, ln_1m_exp(ln_w)) });
        }
    }
    Ok(AtomicMeasure::new(atoms))
}

/// Stick-breaking construction truncated after `rounds` rounds.
pub fn sample_stick(params: &BetaProcessParams, rounds: usize, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    let c = params.c;
    rounds_of_atoms(params, rounds, stream, |round, s| {
        // V = 1 − U^{1/c}, so ln(1 − V) = ln(U) / c exactly.
        let mut ln_w = 0.0;
        for _ in 1..round {
            ln_w += s.open_uniform().ln() / c;
        }
        Ok(ln_w + ln_1m_exp(s.open_uniform().ln() / c))
    })
}

/// Poisson-process representation, gamma-time or exponential-time form, truncated after `rounds` rounds.
pub fn sample_poisson_rep(params: &BetaProcessParams, rounds: usize, stream: &mut RandomStream, variant: PoissonVariant) -> Result<AtomicMeasure> {
    let c = params.c;
    match variant {
        PoissonVariant::GammaTime => rounds_of_atoms(params, rounds, stream, |round, s| {
            let ln_v = s.beta_one(c)?.ln();
            if round == 1 {
                return Ok(ln_v);
            }
            let t = s.ln_gamma_unit((round - 1) as f64)?.exp() / c;
            Ok(ln_v - t)
        }),
        PoissonVariant::ExponentialTime => rounds_of_atoms(params, rounds, stream, |round, s| {
            let mut earlier = 0.0;
            for _ in 1..round {
                earlier += s.exponential();
            }
            Ok(-earlier / c + ln_1m_exp(-s.exponential() / c))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::make_stream;
    use crate::samplers::test_support::{mean_sd, reference_params, totals};

    #[test]
    fn default_rounds_geometric() {
        assert_eq!(default_rounds(2.0, 1.0), 35);
        assert!(1.0 * (2.0f64 / 3.0).powi(35) <= 1e-6);
        assert!(1.0 * (2.0f64 / 3.0).powi(34) > 1e-6);
        assert_eq!(default_rounds(1e-9, 1.0), 1);
    }

    #[test]
    fn exponential_time_injected_example() {
        let c = 2.0;
        let w = exponential_time_weight(&[c * std::f64::consts::LN_2], c).unwrap();
        assert!((w - 0.5).abs() < 1e-15);
        assert!(exponential_time_weight(&[], c).is_err());
        // later rounds telescope: e^{-1/2} - e^{-1}
        let w2 = exponential_time_weight(&[1.0, 1.0], c).unwrap();
        assert!((w2 - ((-0.5f64).exp() - (-1.0f64).exp())).abs() < 1e-15);
    }

    #[test]
    fn empty_rounds_give_empty_path() {
        // γ tiny: every C_i is zero with overwhelming probability
        let params = BetaProcessParams::uniform(2.0, 1e-12).unwrap();
        let path = sample_stick(&params, 5, &mut make_stream(1)).unwrap();
        assert!(path.is_empty());
        let path = sample_poisson_rep(&params, 5, &mut make_stream(1), PoissonVariant::ExponentialTime).unwrap();
        assert!(path.is_empty());
    }

    #[test]
    fn first_round_weights_are_beta_one_c() {
        let params = BetaProcessParams::uniform(2.0, 3.0).unwrap();
        let mut s = make_stream(4);
        let w: Vec<f64> = (0..4000).flat_map(|_| sample_stick(&params, 1, &mut s).unwrap().weights().collect::<Vec<_>>()).collect();
        let (mean, sd) = mean_sd(&w);
        // Beta(1, 2): mean 1/3, var 1/18
        assert!((mean - 1.0 / 3.0).abs() < 0.01, "{mean}");
        assert!((sd - (1.0f64 / 18.0).sqrt()).abs() < 0.01, "{sd}");
    }

    #[test]
    fn forms_agree_in_mean() {
        let params = reference_params();
        for variant in [None, Some(PoissonVariant::GammaTime), Some(PoissonVariant::ExponentialTime)] {
            let mut s = make_stream(21);
            let paths: Vec<_> = (0..3000)
                .map(|_| match variant {
                    None => sample_stick(&params, 40, &mut s).unwrap(),
                    Some(v) => sample_poisson_rep(&params, 40, &mut s, v).unwrap(),
                })
                .collect();
            let (mean, _) = mean_sd(&totals(&paths));
            assert!((mean - 1.0).abs() <= 0.04, "{variant:?}: {mean}");
        }
    }
}
