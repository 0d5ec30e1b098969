use betaproc::benchmark::{empirical_moments, max_mean_error, pc_variance, run_comparison, BenchConfig};
use betaproc::measures::base_uniform01;
use betaproc::SamplerSpec;

#[test]
fn pc_sd_matches_finite_variance() {
    let cfg = BenchConfig { master_seed: 3, ..BenchConfig::default() };
    let m = empirical_moments(&SamplerSpec::Pc { n: 200 }, &cfg).unwrap();
    let base = base_uniform01();
    for (x, sd) in m.grid.iter().zip(&m.sd) {
        let exact = pc_variance(*x, 2.0, &base, 200).sqrt();
        assert!((sd - exact).abs() <= 0.03, "x = {x}: {sd} vs {exact}");
    }
}

#[test]
fn doubling_paths_is_consistent() {
    let spec = SamplerSpec::As { n: 200 };
    let base = base_uniform01();
    let small = BenchConfig { master_seed: 8, ..BenchConfig::default() };
    let large = BenchConfig { paths: 6000, ..small.clone() };
    let e3 = max_mean_error(&empirical_moments(&spec, &small).unwrap(), &base);
    let e6 = max_mean_error(&empirical_moments(&spec, &large).unwrap(), &base);
    // sd of B(1) is 1/sqrt(3); the band of the mean at M = 3000
    let band = (1.0f64 / 3.0).sqrt() / 3000f64.sqrt() * 3.0;
    assert!(e6 <= e3 + 2.0 * band, "{e3} -> {e6}");
}

#[test]
fn report_is_deterministic() {
    let cfg = BenchConfig { paths: 200, master_seed: 42, ..BenchConfig::default() };
    let a = run_comparison(&cfg).unwrap();
    let b = run_comparison(&cfg).unwrap();
    assert_eq!(a.rows.len(), 5);
    for (x, y) in a.rows.iter().zip(&b.rows) {
        assert_eq!((x.max_mean_error, x.max_sd_error), (y.max_mean_error, y.max_sd_error));
        assert!(x.max_mean_error.unwrap() >= 0.0 && x.max_sd_error.unwrap() >= 0.0);
    }
}

#[test]
fn algorithms_use_independent_streams() {
    // the same construction under two labels must not reuse randomness
    let cfg = BenchConfig { paths: 50, master_seed: 1, ..BenchConfig::default() };
    let a = empirical_moments(&SamplerSpec::Pc { n: 200 }, &cfg).unwrap();
    let b = empirical_moments(&SamplerSpec::Pc { n: 201 }, &cfg).unwrap();
    assert_ne!(a.mean, b.mean);
}
