//! Regularized incomplete beta function and its inverse.
//!
//! Both directions work on [`UnitPoint`], which stores `ln x` and `ln(1 - x)`
//! side by side (the `x`/`y` pairing of TOMS 708). Shapes as small as `1e-6`
//! push the quantile far below `f64::MIN_POSITIVE`, and small second shapes
//! push it within less than an ulp of one; the paired logs keep both ends
//! resolvable.

use super::{ln_1m_exp, ln_beta, root::solve_increasing};
use crate::error::{domain, Error, Result};

const CF_MAX_TERMS: usize = 10_000;
const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;

/// A point `x` of `[0, 1]` held as the pair `(ln x, ln(1 - x))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    ln_x: f64,
    ln_y: f64,
}

impl UnitPoint {
    pub fn new(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(domain(format!("point must lie in [0, 1], got {x}")));
        }
        Ok(Self::from(x))
    }

    /// Point with `ln x = ln_x`.
    pub fn from_ln(ln_x: f64) -> Self {
        Self { ln_x, ln_y: ln_1m_exp(ln_x) }
    }

    /// Point with `ln(1 - x) = ln_y`.
    pub fn from_ln_complement(ln_y: f64) -> Self {
        Self { ln_x: ln_1m_exp(ln_y), ln_y }
    }

    pub fn value(&self) -> f64 {
        if self.ln_y > -std::f64::consts::LN_2 {
            self.ln_x.exp()
        } else {
            -self.ln_y.exp_m1()
        }
    }

    /// `1 - x`, accurate even when `x` rounds to one.
    pub fn complement(&self) -> f64 {
        if self.ln_x > -std::f64::consts::LN_2 {
            self.ln_y.exp()
        } else {
            -self.ln_x.exp_m1()
        }
    }

    pub fn ln_value(&self) -> f64 {
        self.ln_x
    }

    pub fn ln_complement(&self) -> f64 {
        self.ln_y
    }

    fn is_valid(&self) -> bool {
        self.ln_x <= 0.0 && self.ln_y <= 0.0
    }
}

impl From<f64> for UnitPoint {
    fn from(x: f64) -> Self {
        Self { ln_x: x.ln(), ln_y: (-x).ln_1p() }
    }
}

/// Lower and upper tail of a Beta law at a point: `I_x(a, b)` and `1 - I_x(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaTails {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    a: f64,
    b: f64,
    ln_beta: f64,
}

impl Shape {
    fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
            return Err(domain(format!("beta shapes must be finite and positive, got ({a}, {b})")));
        }
        Ok(Self { a, b, ln_beta: ln_beta(a, b) })
    }

    fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, ln_beta: self.ln_beta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    Lower,
    Upper,
}

/// One tail evaluated directly by continued fraction; the other is its complement.
#[derive(Debug, Clone, Copy)]
struct TailEval {
    side: Side,
    ln_direct: f64,
}

impl TailEval {
    fn tails(self) -> BetaTails {
        let direct = self.ln_direct.exp();
        let rest = -self.ln_direct.exp_m1();
        match self.side {
            Side::Lower => BetaTails { lower: direct, upper: rest },
            Side::Upper => BetaTails { lower: rest, upper: direct },
        }
    }
}

/// Continued fraction for `I_x(a, b)` (modified Lentz), valid below `(a+1)/(a+b+2)`.
fn beta_cf(a: f64, b: f64, x: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < CF_TINY {
        d = CF_TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=CF_MAX_TERMS {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < CF_TINY {
            d = CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < CF_TINY {
            c = CF_TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::Numeric { what: "incomplete beta continued fraction", iterations: CF_MAX_TERMS, bracket: (x, x) })
}

fn eval(shape: &Shape, pt: UnitPoint) -> Result<TailEval> {
    let Shape { a, b, ln_beta } = *shape;
    if pt.ln_x == f64::NEG_INFINITY {
        return Ok(TailEval { side: Side::Lower, ln_direct: f64::NEG_INFINITY });
    }
    if pt.ln_y == f64::NEG_INFINITY {
        return Ok(TailEval { side: Side::Upper, ln_direct: f64::NEG_INFINITY });
    }
    let ln_front = a * pt.ln_x + b * pt.ln_y - ln_beta;
    let x = pt.value();
    if x < (a + 1.0) / (a + b + 2.0) {
        let cf = beta_cf(a, b, x)?;
        Ok(TailEval { side: Side::Lower, ln_direct: ln_front - a.ln() + cf.ln() })
    } else {
        let cf = beta_cf(b, a, pt.complement())?;
        Ok(TailEval { side: Side::Upper, ln_direct: ln_front - b.ln() + cf.ln() })
    }
}

fn checked_point(x: impl Into<UnitPoint>) -> Result<UnitPoint> {
    let pt = x.into();
    if !pt.is_valid() {
        return Err(domain(format!("point must lie in [0, 1], got ln x = {}", pt.ln_x)));
    }
    Ok(pt)
}

/// Both tails of Beta(a, b) at `x`.
pub fn beta_tails(x: impl Into<UnitPoint>, a: f64, b: f64) -> Result<BetaTails> {
    let shape = Shape::new(a, b)?;
    Ok(eval(&shape, checked_point(x)?)?.tails())
}

/// The regularized incomplete beta function `I_x(a, b)`, i.e. the Beta(a, b) CDF.
pub fn reg_inc_beta(x: impl Into<UnitPoint>, a: f64, b: f64) -> Result<f64> {
    Ok(beta_tails(x, a, b)?.lower)
}

/// Solves `I_z(a, b) = own` for `ln z <= ln 1/2`, where `other = 1 - own`.
///
/// The residual compares logs of whichever tail the continued fraction
/// produced directly, so it keeps relative precision at both extremes.
fn solve_small_side(shape: &Shape, own: f64, other: f64) -> Result<f64> {
    let (ln_own, ln_other) = (own.ln(), other.ln());
    let residual = |s: f64| -> Result<(f64, f64)> {
        let pt = UnitPoint::from_ln(s);
        let ev = eval(shape, pt)?;
        let r = match ev.side {
            Side::Lower => ev.ln_direct - ln_own,
            Side::Upper => ln_other - ev.ln_direct,
        };
        // d/ds of the log-tail equals z * pdf(z) / tail in both cases.
        let ln_zpdf = shape.a * s + (shape.b - 1.0) * pt.ln_y - shape.ln_beta;
        Ok((r, (ln_zpdf - ev.ln_direct).exp()))
    };
    // Near zero I_z ≈ z^a / (a B(a, b)).
    let guess = (ln_own + shape.a.ln() + shape.ln_beta) / shape.a;
    solve_increasing(residual, -std::f64::consts::LN_2, guess, "beta_quantile")
}

/// Quantile of Beta(a, b) at probability `p`.
pub fn beta_quantile(p: f64, a: f64, b: f64) -> Result<UnitPoint> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("probability must lie in [0, 1], got {p}")));
    }
    beta_quantile_tails(p, 1.0 - p, a, b)
}

/// Quantile of Beta(a, b) given the target as a tail pair `(lower, upper)`
/// with `lower + upper = 1`.
///
/// Passing both tails lets callers supply an upper tail that is far below
/// `f64::EPSILON` without losing it to `1 - p` rounding.
pub fn beta_quantile_tails(lower: f64, upper: f64, a: f64, b: f64) -> Result<UnitPoint> {
    let shape = Shape::new(a, b)?;
    if !(0.0..=1.0).contains(&lower) || !(0.0..=1.0).contains(&upper) || ((lower + upper) - 1.0).abs() > 1e-12 {
        return Err(domain(format!("tail pair ({lower}, {upper}) is not a probability split")));
    }
    if lower == 0.0 {
        return Ok(UnitPoint::from(0.0));
    }
    if upper == 0.0 {
        return Ok(UnitPoint::from(1.0));
    }
    let half = eval(&shape, UnitPoint::from(0.5))?.tails();
    let below_half = if lower <= 0.5 { lower <= half.lower } else { upper >= half.upper };
    if below_half {
        Ok(UnitPoint::from_ln(solve_small_side(&shape, lower, upper)?))
    } else {
        Ok(UnitPoint::from_ln_complement(solve_small_side(&shape.swapped(), upper, lower)?))
    }
}
