use core::f64::consts::FRAC_1_SQRT_2;

use libm::{erf, erfc, exp, floor, lgamma_r, tgamma};

use crate::{Error, Result};

/// Standard normal distribution function `Phi`.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

pub fn std_normal_pdf(x: f64) -> f64 {
    // 1 / sqrt(2 pi)
    0.398_942_280_401_432_7 * exp(-0.5 * x * x)
}

/// Half-normal distribution function `Psi(x) = 2 Phi(max(0, x)) - 1`,
/// i.e. `P(|X| < x)` for standard normal `X`.
pub fn half_normal_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        // 2 Phi(x) - 1 without the cancellation
        erf(x * FRAC_1_SQRT_2)
    }
}

/// Euler gamma function for positive arguments (and negative non-integers).
///
/// Backed by `libm::tgamma`; relative error stays below `1e-13` on
/// `[0.05, 50]`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() || (x <= 0.0 && floor(x) == x) {
        return Err(Error::domain("x", "x not a nonpositive integer", x));
    }
    Ok(tgamma(x))
}

/// `ln |Gamma(x)|`.
pub fn ln_gamma(x: f64) -> f64 {
    lgamma_r(x).0
}
