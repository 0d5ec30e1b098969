//! Special functions and Lévy-tail numerics shared by every sampler.
//!
//! Everything here is pure. Quantities that can leave the range of `f64`
//! (tiny incomplete-beta arguments, far-out Lévy tails) are handled in log
//! space; see [`UnitPoint`].

mod beta;
mod levy;
mod quadrature;
mod root;

pub use beta::{beta_quantile, beta_quantile_tails, beta_tails, reg_inc_beta, BetaTails, UnitPoint};
pub use levy::{
    finite_tail, finite_tail_inverse, finite_tail_inverse_point, finite_tail_shapes, levy_tail,
    levy_tail_closed_form, levy_tail_inverse, levy_tail_inverse_point, LevyTailSpec,
};

use crate::error::{domain, Result};

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("log_gamma requires a finite x > 0, got {x}")));
    }
    Ok(libm::lgamma(x))
}

/// `ln B(a, b)`; callers guarantee `a, b > 0`.
pub(crate) fn ln_beta(a: f64, b: f64) -> f64 {
    libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b)
}

/// `ln(1 - e^l)` for `l <= 0`.
pub(crate) fn ln_1m_exp(l: f64) -> f64 {
    if l > -std::f64::consts::LN_2 {
        (-l.exp_m1()).ln()
    } else {
        (-l.exp()).ln_1p()
    }
}
