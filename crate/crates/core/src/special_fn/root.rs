//! Safeguarded Newton iteration for increasing scalar functions.

use crate::error::{Error, Result};

pub(crate) const MAX_ITERATIONS: usize = 200;

/// Finds the root of an increasing function on `(-inf, hi]`.
///
/// `f` returns `(residual, d residual / ds)`. The residual must be
/// nonnegative at `hi`. A finite lower bracket is located by stepping down
/// from `guess` with doubling strides; the root is then polished with Newton
/// steps that fall back to bisection whenever a step would leave the bracket
/// or fails to halve the previous step (rtsafe).
pub(crate) fn solve_increasing<F>(mut f: F, hi: f64, guess: f64, what: &'static str) -> Result<f64>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    let (r_hi, _) = f(hi)?;
    if r_hi <= 0.0 {
        return Ok(hi);
    }
    let mut hi = hi;
    let mut s = if guess.is_finite() { guess.min(hi) } else { hi - 1.0 };
    let (mut r, mut d) = f(s)?;
    if r == 0.0 {
        return Ok(s);
    }
    let mut lo;
    if r < 0.0 {
        lo = s;
    } else {
        hi = s;
        let mut stride = 1.0f64;
        let mut found = false;
        lo = s;
        for _ in 0..2100 {
            lo = s - stride;
            stride *= 2.0;
            let (rl, dl) = f(lo)?;
            if rl == 0.0 {
                return Ok(lo);
            }
            if rl < 0.0 {
                found = true;
                (s, r, d) = (lo, rl, dl);
                break;
            }
            hi = lo;
            if !lo.is_finite() {
                break;
            }
        }
        if !found {
            return Err(Error::Numeric { what, iterations: 0, bracket: (lo, hi) });
        }
    }

    let tol = |x: f64| 4.0 * f64::EPSILON * x.abs().max(1.0);
    let mut dx_old = hi - lo;
    let mut dx = dx_old;
    for _ in 0..MAX_ITERATIONS {
        let newton_leaves = ((s - hi) * d - r) * ((s - lo) * d - r) > 0.0;
        let newton_slow = (2.0 * r).abs() > (dx_old * d).abs();
        dx_old = dx;
        let next = if !(d > 0.0) || newton_leaves || newton_slow {
            dx = 0.5 * (hi - lo);
            lo + dx
        } else {
            dx = r / d;
            s - dx
        };
        if dx.abs() <= tol(next) || next == s {
            return Ok(next);
        }
        s = next;
        (r, d) = f(s)?;
        if r == 0.0 {
            return Ok(s);
        }
        if r < 0.0 {
            lo = s;
        } else {
            hi = s;
        }
        if hi - lo <= tol(s) {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::Numeric { what, iterations: MAX_ITERATIONS, bracket: (lo, hi) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let root = solve_increasing(|s| Ok((s * s * s + 8.0, 3.0 * s * s)), 10.0, 5.0, "cubic").unwrap();
        assert!((root + 2.0).abs() < 1e-14);
    }

    #[test]
    fn far_root_found_by_stepping_down() {
        let root = solve_increasing(|s| Ok((s + 1e9, 1.0)), 0.0, -1.0, "linear").unwrap();
        assert!((root + 1e9).abs() < 1e-5);
    }

    #[test]
    fn flat_derivative_falls_back_to_bisection() {
        // derivative reported as zero everywhere
        let root = solve_increasing(|s| Ok((s - 0.25, 0.0)), 1.0, 0.0, "flat").unwrap();
        assert!((root - 0.25).abs() < 1e-14);
    }

    #[test]
    fn nonpositive_at_hi_returns_hi() {
        assert_eq!(solve_increasing(|s| Ok((s - 2.0, 1.0)), 1.0, 0.0, "x").unwrap(), 1.0);
    }
}
