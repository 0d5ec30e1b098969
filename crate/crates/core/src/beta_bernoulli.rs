//! Bernoulli-process observations of a beta-process path and the conjugate
//! posterior they induce.

use crate::error::{domain, parameter, Result};
use crate::measures::{mix_base, Atom, AtomicMeasure, BaseMeasure, BernoulliDraw, BetaProcessParams};
use crate::randgen::RandomStream;
use crate::samplers::sample_as;

/// Independent coin flips at every atom, with heads probability equal to its weight.
pub fn bep_draw(path: &AtomicMeasure, stream: &mut RandomStream) -> Result<BernoulliDraw> {
    if let Some(bad) = path.atoms.iter().find(|a| !(0.0..=1.0).contains(&a.w)) {
        return Err(domain(format!("Bernoulli probability must lie in [0, 1], got {} at {}", bad.w, bad.loc)));
    }
    let hits = path.atoms.iter().filter(|a| stream.bernoulli(a.w)).map(|a| a.loc).collect();
    Ok(BernoulliDraw::new(hits))
}

/// `BP(c + m, mix_base(prior, draws))` for `m = draws.len()`.
pub fn posterior_update(prior: &BetaProcessParams, draws: &[BernoulliDraw]) -> Result<BetaProcessParams> {
    if draws.is_empty() {
        return Ok(prior.clone());
    }
    match &prior.base {
        BaseMeasure::Continuous(_) => Ok(BetaProcessParams { c: prior.c + draws.len() as f64, base: mix_base(prior, draws)? }),
        BaseMeasure::Mixed { .. } => update_mixed(prior, draws),
    }
}

/// A mixed base is a posterior already: rescale it by `c / (c + m')` and add the
/// new counts, which is the same measure as one update with every draw.
fn update_mixed(prior: &BetaProcessParams, draws: &[BernoulliDraw]) -> Result<BetaProcessParams> {
    let BaseMeasure::Mixed { continuous, atoms } = &prior.base else {
        unreachable!("caller matched the mixed case");
    };
    let c_new = prior.c + draws.len() as f64;
    // Observation counts `k = mass * c` are integers for any base built by an
    // earlier update; snapping them back removes the rounding of `k / c`.
    let count = |mass: f64| {
        let k = mass * prior.c;
        if (k - k.round()).abs() <= 1e-9 * k.max(1.0) { k.round() } else { k }
    };
    let mut counts: Vec<(f64, f64)> = atoms.iter().map(|a| (a.loc, count(a.mass))).collect();
    for d in draws {
        for &loc in &BernoulliDraw::new(d.locations.clone()).locations {
            match counts.iter_mut().find(|(l, _)| *l == loc) {
                Some(entry) => entry.1 += 1.0,
                None => counts.push((loc, 1.0)),
            }
        }
    }
    counts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let atoms = counts.into_iter().map(|(loc, k)| crate::measures::FixedAtom { loc, mass: k / c_new }).collect();
    let mut continuous = continuous.clone();
    continuous.mass = (continuous.mass * prior.c) / c_new;
    Ok(BetaProcessParams { c: c_new, base: BaseMeasure::Mixed { continuous, atoms } })
}

/// One posterior path.
///
/// The continuous part is an almost-sure approximation with `n` atoms under
/// concentration `c*`; each fixed atom of base mass `q` gets a weight drawn
/// from `Beta(c* q, c* (1 − q))`.
pub fn sample_posterior(post: &BetaProcessParams, n: u64, stream: &mut RandomStream) -> Result<AtomicMeasure> {
    let cont = post.base.continuous_part();
    if !(n as f64 > cont.mass) {
        return Err(parameter(format!("n = {n} must exceed the continuous mass {}", cont.mass)));
    }
    let continuous = BetaProcessParams { c: post.c, base: BaseMeasure::Continuous(cont.clone()) };
    let mut atoms = sample_as(&continuous, n, stream)?.atoms;
    for fixed in post.base.atoms() {
        if !(fixed.mass > 0.0 && fixed.mass < 1.0) {
            return Err(domain(format!("fixed atom at {} has base mass {} outside (0, 1)", fixed.loc, fixed.mass)));
        }
        let (ln_w, ln_1m_w) = stream.ln_beta_pair(post.c * fixed.mass, post.c * (1.0 - fixed.mass))?;
        atoms.push(Atom { loc: fixed.loc, w: crate::samplers::unit_weight(ln_w, ln_1m_w) });
    }
    Ok(AtomicMeasure::new(atoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::make_stream;

    fn prior() -> BetaProcessParams {
        BetaProcessParams::uniform(2.0, 1.0).unwrap()
    }

    #[test]
    fn degenerate_coins() {
        let path = AtomicMeasure::new(vec![Atom { loc: 0.1, w: 1.0 }, Atom { loc: 0.2, w: 0.0 }]);
        let mut s = make_stream(0);
        for _ in 0..200 {
            assert_eq!(bep_draw(&path, &mut s).unwrap().locations, vec![0.1]);
        }
        assert!(bep_draw(&AtomicMeasure::default(), &mut s).unwrap().is_empty());
    }

    #[test]
    fn inclusion_frequency() {
        let path = AtomicMeasure::new(vec![Atom { loc: 0.5, w: 0.3 }]);
        let mut s = make_stream(5);
        let hits = (0..10_000).filter(|_| !bep_draw(&path, &mut s).unwrap().is_empty()).count();
        assert!((hits as f64 / 1e4 - 0.3).abs() < 0.02);
    }

    #[test]
    fn weight_out_of_range() {
        let path = AtomicMeasure::new(vec![Atom { loc: 0.5, w: 1.5 }]);
        assert!(matches!(bep_draw(&path, &mut make_stream(0)), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn posterior_examples() {
        assert_eq!(posterior_update(&prior(), &[]).unwrap(), prior());

        let post = posterior_update(&prior(), &[BernoulliDraw::new(vec![0.4])]).unwrap();
        assert_eq!(post.c, 3.0);
        assert!((post.base.continuous_part().mass - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(post.base.atoms()[0].loc, 0.4);
        assert!((post.base.atoms()[0].mass - 1.0 / 3.0).abs() < 1e-15);

        let p1 = BetaProcessParams::uniform(1.0, 1.0).unwrap();
        let draws = [vec![0.3], vec![0.3, 0.6], vec![], vec![0.3]].map(BernoulliDraw::new);
        let post = posterior_update(&p1, &draws).unwrap();
        assert_eq!(post.c, 5.0);
        let at = post.base.atoms().iter().find(|a| a.loc == 0.3).unwrap();
        assert!((at.mass - 0.6).abs() < 1e-15);
    }

    #[test]
    fn batching_is_associative() {
        let draws = [vec![0.1, 0.5], vec![0.5], vec![0.9], vec![0.1, 0.5, 0.7]].map(BernoulliDraw::new);
        let once = posterior_update(&prior(), &draws).unwrap();
        let twice = posterior_update(&posterior_update(&prior(), &draws[..2]).unwrap(), &draws[2..]).unwrap();
        assert_eq!(once.c, twice.c);
        assert_eq!(once.base.atoms().len(), twice.base.atoms().len());
        for (a, b) in once.base.atoms().iter().zip(twice.base.atoms()) {
            assert_eq!(a.loc, b.loc);
            assert_eq!(a.mass, b.mass);
        }
        assert_eq!(once.base.continuous_part().mass, twice.base.continuous_part().mass);
    }

    #[test]
    fn no_observations_is_plain_as() {
        let a = sample_posterior(&prior(), 50, &mut make_stream(9)).unwrap();
        let b = sample_as(&prior(), 50, &mut make_stream(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fixed_atom_weight_mean() {
        let post = posterior_update(&prior(), &[BernoulliDraw::new(vec![0.4])]).unwrap();
        let mut s = make_stream(17);
        let mut total = 0.0;
        for _ in 0..10_000 {
            let path = sample_posterior(&post, 20, &mut s).unwrap();
            total += path.atoms.iter().find(|a| a.loc == 0.4).unwrap().w;
        }
        assert!((total / 1e4 - 1.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn posterior_mean_mass() {
        let draws = [vec![0.2, 0.7], vec![0.2]].map(BernoulliDraw::new);
        let post = posterior_update(&prior(), &draws).unwrap();
        let mut s = make_stream(23);
        let mean = (0..3000).map(|_| sample_posterior(&post, 200, &mut s).unwrap().total_mass()).sum::<f64>() / 3000.0;
        assert!((mean - post.mass()).abs() < 0.05, "{mean} vs {}", post.mass());
    }

    #[test]
    fn posterior_json_round_trip() {
        let post = posterior_update(&prior(), &[BernoulliDraw::new(vec![0.25, 0.75])]).unwrap();
        let text = serde_json::to_string(&post).unwrap();
        assert_eq!(serde_json::from_str::<BetaProcessParams>(&text).unwrap(), post);
        let draw = BernoulliDraw::new(vec![0.75, 0.25]);
        assert_eq!(serde_json::to_string(&draw).unwrap(), "[0.25,0.75]");
    }
}
