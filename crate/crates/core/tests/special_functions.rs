use betaproc::special_fn::{
    beta_quantile, finite_tail, levy_tail, levy_tail_closed_form, levy_tail_inverse, log_gamma, reg_inc_beta, LevyTailSpec,
};

const SHAPES: [f64; 5] = [0.01, 0.1, 1.0, 2.0, 10.0];

fn p_grid() -> impl Iterator<Item = f64> {
    (1..=99).map(|i| i as f64 / 100.0)
}

#[test]
fn quantile_round_trip_grid() {
    let mut worst = (0.0, 0.0, 0.0, 0.0);
    for &a in &SHAPES {
        for &b in &SHAPES {
            for p in p_grid() {
                let x = beta_quantile(p, a, b).unwrap();
                let err = (reg_inc_beta(x, a, b).unwrap() - p).abs();
                if err > worst.0 {
                    worst = (err, a, b, p);
                }
            }
        }
    }
    assert!(worst.0 <= 1e-10, "worst {worst:?}");
}

#[test]
fn quantile_at_finite_shape() {
    // a = cγ/n and b = c(1 − γ/n) at c = 2, γ = 1, n = 200
    let (a, b) = (0.01, 1.99);
    for p in p_grid() {
        let x = beta_quantile(p, a, b).unwrap();
        assert!((reg_inc_beta(x, a, b).unwrap() - p).abs() <= 1e-10, "p = {p}");
    }
}

#[test]
fn levy_tail_strictly_decreasing() {
    for c in [0.5, 1.0, 2.0, 7.5] {
        let spec = LevyTailSpec::new(c, 1.0).unwrap();
        let values: Vec<f64> = (1..=1000).map(|i| levy_tail(i as f64 / 1001.0, spec).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]), "c = {c}");
    }
}

#[test]
fn finite_tail_strictly_decreasing() {
    let spec = LevyTailSpec::new(2.0, 1.0).unwrap();
    let values: Vec<f64> = (1..=1000).map(|i| finite_tail(i as f64 / 1001.0, spec, 200).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn unit_concentration_closed_form() {
    for gamma in [0.5, 1.0, 3.0] {
        let spec = LevyTailSpec::new(1.0, gamma).unwrap();
        for x in p_grid() {
            assert!((levy_tail(x, spec).unwrap() - gamma * (1.0 / x).ln()).abs() <= 1e-10, "x = {x}");
        }
        for i in 0..=200 {
            let t = i as f64 * 0.05;
            let want = (-t / gamma).exp();
            if want < 1.0 {
                assert!((levy_tail_inverse(t, spec).unwrap() - want).abs() <= 1e-10, "t = {t}");
            }
        }
    }
}

#[test]
fn mass_scaling_is_exact() {
    for c in [0.5, 2.0, 3.5] {
        let unit = LevyTailSpec::new(c, 1.0).unwrap();
        for gamma in [0.25, 3.0, 17.0] {
            let spec = LevyTailSpec::new(c, gamma).unwrap();
            for x in [1e-8, 0.01, 0.3, 0.5, 0.77, 0.999] {
                assert_eq!(levy_tail(x, spec).unwrap(), gamma * levy_tail(x, unit).unwrap());
            }
        }
    }
}

#[test]
fn integer_concentration_routes_agree() {
    for c in [2.0, 3.0, 5.0, 10.0] {
        let spec = LevyTailSpec::new(c, 1.0).unwrap();
        for x in [1e-6, 1e-3, 0.05, 0.2, 0.5, 0.8, 0.95, 0.999] {
            let closed = levy_tail_closed_form(x, spec).unwrap().expect("integer c has a closed form");
            let numeric = levy_tail(x, spec).unwrap();
            assert!((closed - numeric).abs() <= 1e-10 * closed.max(1.0), "c = {c}, x = {x}: {closed} vs {numeric}");
        }
    }
    assert_eq!(levy_tail_closed_form(0.5, LevyTailSpec::new(2.5, 1.0).unwrap()).unwrap(), None);
}

#[test]
fn levy_inverse_round_trip() {
    for c in [0.3, 1.0, 2.0, 6.0] {
        let spec = LevyTailSpec::new(c, 1.0).unwrap();
        for x in [1e-5, 0.01, 0.1, 0.4, 0.6, 0.9, 0.99] {
            let t = levy_tail(x, spec).unwrap();
            let back = levy_tail_inverse(t, spec).unwrap();
            assert!((back - x).abs() <= 1e-10 * x.max(1e-3), "c = {c}, x = {x}, got {back}");
        }
    }
}

#[test]
fn log_gamma_recurrence() {
    for x in [0.1, 0.7, 1.3, 4.2, 55.5] {
        let lhs = log_gamma(x + 1.0).unwrap();
        let rhs = log_gamma(x).unwrap() + f64::ln(x);
        assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0), "x = {x}");
    }
}
