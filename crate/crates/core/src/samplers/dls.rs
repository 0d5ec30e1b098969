//! Damien–Laud–Smith: compound-Poisson approximations of the increments over
//! the cells of a partition, each placed at its cell's right endpoint.

use super::{continuous_base, Partition, Sampled};
use crate::error::Result;
use crate::measures::{Atom, AtomicMeasure, BetaProcessParams};
use crate::randgen::RandomStream;

/// `p = Σ_{j≤n} x_j y_j`, `x_j ~ Beta(1, c)`, `y_j | x_j ~ Poisson(λ / (n x_j))`.
pub fn dls_increment(lambda: f64, c: f64, n: u64, stream: &mut RandomStream) -> Result<f64> {
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let mut p = 0.0;
    for _ in 0..n {
        let x = stream.beta_one(c)?;
        let y = stream.poisson(lambda / (nf * x))?;
        p += x * y as f64;
    }
    Ok(p)
}

pub(super) fn sample_dls_counted(params: &BetaProcessParams, partition: &Partition, n: u64, stream: &mut RandomStream) -> Result<Sampled> {
    let base = continuous_base(params)?;
    let points = partition.resolve(base)?;
    let mut atoms = Vec::with_capacity(points.len() - 1);
    let mut dropped = 0;
    for cell in points.windows(2) {
        let lambda = base.mass * (base.profile.cdf(cell[1]) - base.profile.cdf(cell[0]));
        let w = dls_increment(lambda, params.c, n, stream)?;
        if w > 0.0 {
            atoms.push(Atom { loc: cell[1], w });
        } else {
            dropped += 1;
        }
    }
    Ok(Sampled { path: AtomicMeasure::new(atoms), dropped_zero_weights: dropped })
}

/// One path `Σ_i p_i δ_{ω_i}` over the cells of `partition`; zero increments are dropped.
pub fn sample_dls(params: &BetaProcessParams, partition: &Partition, n: u64, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    Ok(sample_dls_counted(params, partition, n, stream)?.path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::make_stream;
    use crate::samplers::test_support::{mean_sd, reference_params, totals};

    #[test]
    fn zero_mass_cell_has_zero_increment() {
        let mut s = make_stream(3);
        for _ in 0..100 {
            assert_eq!(dls_increment(0.0, 2.0, 50, &mut s).unwrap(), 0.0);
        }
    }

    #[test]
    fn cells_outside_support_contribute_nothing() {
        let params = reference_params();
        let partition = Partition::Points(vec![-1.0, 0.0, 0.5, 1.0, 2.0]);
        for seed in 0..20 {
            let out = sample_dls_counted(&params, &partition, 50, &mut make_stream(seed)).unwrap();
            assert!(out.path.locations().all(|l| l == 0.5 || l == 1.0));
            assert!(out.dropped_zero_weights >= 2);
        }
    }

    #[test]
    fn atoms_sit_on_right_endpoints() {
        let params = reference_params();
        let path = sample_dls(&params, &Partition::Uniform { cells: 10 }, 50, &mut make_stream(8)).unwrap();
        for loc in path.locations() {
            assert!(((loc * 10.0).round() - loc * 10.0).abs() < 1e-12 && loc > 0.0);
        }
    }

    #[test]
    fn empty_partition_rejected() {
        let params = reference_params();
        let err = sample_dls(&params, &Partition::Points(vec![]), 10, &mut make_stream(0));
        assert!(matches!(err, Err(crate::Error::Parameter(_))));
        assert!(sample_dls(&params, &Partition::Uniform { cells: 0 }, 10, &mut make_stream(0)).is_err());
    }

    #[test]
    fn mean_mass_matches_base() {
        let params = reference_params();
        let mut s = make_stream(12);
        let paths: Vec<_> = (0..1000).map(|_| sample_dls(&params, &Partition::Uniform { cells: 50 }, 50, &mut s).unwrap()).collect();
        let (mean, _) = mean_sd(&totals(&paths));
        assert!((mean - 1.0).abs() < 0.06, "{mean}");
    }
}
