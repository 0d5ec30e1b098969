//! Tail of the beta-process Lévy measure and of its finite-n beta approximation.
//!
//! The limiting tail is
//!
//! ```text
//! mu(x) = c * gamma * ∫_x^1 s^-1 (1 - s)^(c-1) ds
//! ```
//!
//! We evaluate the integral as `-ln x + ∫_x^h g(s) ds + S(1 - h)` with
//! `h = max(x, 1/2)`, `g(s) = ((1 - s)^(c-1) - 1) / s` (bounded and smooth on
//! `[0, 1/2]`, integrated by adaptive Gauss–Kronrod) and
//! `S(y) = Σ_k y^(k+c) / (k+c)`, the exact expansion of the piece near `s = 1`
//! where `(1 - s)^(c-1)` may be singular.

use serde::{Deserialize, Serialize};

use super::beta::{beta_quantile_tails, beta_tails, UnitPoint};
use super::quadrature::integrate;
use super::root::solve_increasing;
use crate::error::{domain, parameter, Result};

const QUAD_ABS_TOL: f64 = 1e-13;
const QUAD_REL_TOL: f64 = 1e-15;
const QUAD_MAX_SEGMENTS: usize = 200;

/// Concentration `c` and base mass `gamma` of a beta process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevyTailSpec {
    c: f64,
    gamma: f64,
}

impl LevyTailSpec {
    pub fn new(c: f64, gamma: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(parameter(format!("concentration must be positive, got {c}")));
        }
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(parameter(format!("mass must be positive, got {gamma}")));
        }
        Ok(Self { c, gamma })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `S(y) = ∫_{1-y}^1 s^-1 (1-s)^(c-1) ds` for `0 <= y <= 1/2`.
fn near_one_series(y: f64, c: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 0..200 {
        let term = power / (k as f64 + c);
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
        power *= y;
    }
    y.powf(c) * sum
}

fn smooth_part(s: f64, c: f64) -> f64 {
    if s == 0.0 {
        return 1.0 - c;
    }
    ((c - 1.0) * (-s).ln_1p()).exp_m1() / s
}

/// `∫_x^1 s^-1 (1-s)^(c-1) ds` at the point `pt`.
fn unit_tail(pt: UnitPoint, c: f64) -> Result<f64> {
    let x = pt.value();
    if x >= 0.5 {
        return Ok(near_one_series(pt.complement(), c));
    }
    let q = integrate(|s| smooth_part(s, c), x, 0.5, QUAD_ABS_TOL, QUAD_REL_TOL, QUAD_MAX_SEGMENTS);
    if !q.converged {
        return Err(crate::Error::Numeric { what: "levy_tail quadrature", iterations: QUAD_MAX_SEGMENTS, bracket: (x, 0.5) });
    }
    Ok(-pt.ln_value() + q.value + near_one_series(0.5, c) - std::f64::consts::LN_2)
}

fn check_open_unit(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(format!("levy_tail requires 0 < x < 1, got {x}")));
    }
    Ok(())
}

/// `mu(x)`, the Lévy-measure mass of jumps larger than `x`.
pub fn levy_tail(x: f64, spec: LevyTailSpec) -> Result<f64> {
    check_open_unit(x)?;
    let per_unit_mass = spec.c * unit_tail(UnitPoint::from(x), spec.c)?;
    Ok(spec.gamma * per_unit_mass)
}

/// `mu(x)` through the binomial expansion of `(1 - s)^(c-1)`; `None` unless
/// `c` is a positive integer no larger than 64.
///
/// Independent of the quadrature route, and used to cross-check it.
pub fn levy_tail_closed_form(x: f64, spec: LevyTailSpec) -> Result<Option<f64>> {
    check_open_unit(x)?;
    let c = spec.c;
    if c.fract() != 0.0 || c > 64.0 {
        return Ok(None);
    }
    let n = c as u32 - 1;
    let mut sum = -x.ln();
    let mut binom = 1.0;
    for j in 1..=n {
        binom *= f64::from(n - j + 1) / f64::from(j);
        let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
        sum += sign * binom * -(f64::from(j) * x.ln()).exp_m1() / f64::from(j);
    }
    Ok(Some(spec.gamma * c * sum))
}

/// Inverse of [`levy_tail`] as a [`UnitPoint`], so jumps below
/// `f64::MIN_POSITIVE` keep their logarithm.
pub fn levy_tail_inverse_point(t: f64, spec: LevyTailSpec) -> Result<UnitPoint> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!("levy_tail_inverse requires t > 0, got {t}")));
    }
    let c = spec.c;
    let target = t / (spec.gamma * c);
    let at_half = near_one_series(0.5, c);
    if target >= at_half {
        // x <= 1/2; solve in s = ln x. For tiny x the tail is -ln x + const.
        let offset = unit_tail(UnitPoint::from_ln(-700.0), c)? - 700.0;
        let residual = |s: f64| -> Result<(f64, f64)> {
            let pt = UnitPoint::from_ln(s);
            let r = target - unit_tail(pt, c)?;
            Ok((r, ((c - 1.0) * pt.ln_complement()).exp()))
        };
        let s = solve_increasing(residual, -std::f64::consts::LN_2, offset - target, "levy_tail_inverse")?;
        Ok(UnitPoint::from_ln(s))
    } else {
        // x > 1/2; solve in v = ln(1 - x), where the tail ≈ (1-x)^c / c.
        let residual = |v: f64| -> Result<(f64, f64)> {
            let y = v.exp();
            let r = near_one_series(y, c) - target;
            Ok((r, (c * v).exp() / (1.0 - y)))
        };
        let guess = (c * target).ln() / c;
        let v = solve_increasing(residual, -std::f64::consts::LN_2, guess, "levy_tail_inverse")?;
        Ok(UnitPoint::from_ln_complement(v))
    }
}

/// Inverse of [`levy_tail`]: `x` with `mu(x) = t`.
///
/// The result is clamped into the open interval, so a tail too small to move
/// `x` off one returns the largest `f64` below one, and a jump below the
/// normal range returns `f64::MIN_POSITIVE`.
pub fn levy_tail_inverse(t: f64, spec: LevyTailSpec) -> Result<f64> {
    let x = levy_tail_inverse_point(t, spec)?.value();
    Ok(x.clamp(f64::MIN_POSITIVE, 1.0f64.next_down()))
}

/// Shapes `(c gamma / n, c (1 - gamma / n))` of the finite-n weight law.
pub fn finite_tail_shapes(spec: LevyTailSpec, n: u64) -> Result<(f64, f64)> {
    let nf = n as f64;
    if !(nf > spec.gamma) {
        return Err(parameter(format!("number of atoms n = {n} must exceed the mass {}", spec.gamma)));
    }
    Ok((spec.c * spec.gamma / nf, spec.c * (1.0 - spec.gamma / nf)))
}

/// `mu_n(x) = 1 - I_x(c gamma / n, c (1 - gamma / n))`.
pub fn finite_tail(x: f64, spec: LevyTailSpec, n: u64) -> Result<f64> {
    let (a, b) = finite_tail_shapes(spec, n)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(domain(format!("finite_tail requires 0 <= x <= 1, got {x}")));
    }
    Ok(beta_tails(x, a, b)?.upper)
}

/// Inverse of `mu_n` as a [`UnitPoint`]. `u` is the upper-tail level, kept
/// exact even when it is far below `f64::EPSILON`; `one_minus_u` must equal
/// `1 - u` (callers that can compute it without cancellation should).
pub fn finite_tail_inverse_point(u: f64, one_minus_u: f64, spec: LevyTailSpec, n: u64) -> Result<UnitPoint> {
    let (a, b) = finite_tail_shapes(spec, n)?;
    beta_quantile_tails(one_minus_u, u, a, b)
}

/// Inverse of `mu_n`: the Beta(c gamma / n, c (1 - gamma / n)) quantile at `1 - u`.
pub fn finite_tail_inverse(u: f64, spec: LevyTailSpec, n: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(domain(format!("finite_tail_inverse requires 0 <= u <= 1, got {u}")));
    }
    Ok(finite_tail_inverse_point(u, 1.0 - u, spec, n)?.value())
}
