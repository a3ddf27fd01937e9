//! Closed forms for the one-sided Weibull law `P(W < x) = 1 - exp(-x^gamma)`
//! and the symmetric two-sided law `W~ = U W` with a fair random sign `U`.

use libm::{exp, expm1, log, log1p, pow};
use rand::Rng;

use crate::stats::{exp1, gamma_fn};
use crate::{Error, Result};

/// One-sided Weibull law with shape `gamma > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeibullLaw {
    gamma: f64,
}

impl WeibullLaw {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(WeibullLaw { gamma })
        } else {
            Err(Error::domain("gamma", "gamma > 0", gamma))
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Symmetric two-sided Weibull law with shape `gamma > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoSidedWeibullLaw {
    gamma: f64,
}

impl TwoSidedWeibullLaw {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(TwoSidedWeibullLaw { gamma })
        } else {
            Err(Error::domain("gamma", "gamma > 0", gamma))
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Law of `|W~|`.
    pub fn one_sided(&self) -> WeibullLaw {
        WeibullLaw { gamma: self.gamma }
    }
}

pub fn weibull_cdf(law: WeibullLaw, x: f64) -> f64 {
    if x > 0.0 {
        -expm1(-pow(x, law.gamma))
    } else {
        0.0
    }
}

/// Survival function `exp(-x^gamma)` for `x >= 0`, 1 below.
pub fn weibull_sf(law: WeibullLaw, x: f64) -> f64 {
    if x > 0.0 {
        exp(-pow(x, law.gamma))
    } else {
        1.0
    }
}

/// `gamma x^(gamma-1) exp(-x^gamma)` for `x > 0`. At `x = 0` the value is
/// `+inf` for `gamma < 1`, `1` for `gamma = 1` and `0` for `gamma > 1`.
pub fn weibull_pdf(law: WeibullLaw, x: f64) -> f64 {
    let g = law.gamma;
    if x < 0.0 || x.is_nan() {
        return 0.0;
    }
    if x == 0.0 {
        return match g.partial_cmp(&1.0) {
            Some(core::cmp::Ordering::Less) => f64::INFINITY,
            Some(core::cmp::Ordering::Equal) => 1.0,
            _ => 0.0,
        };
    }
    let xg = pow(x, g);
    g * xg / x * exp(-xg)
}

/// `(-ln(1 - p))^(1/gamma)` for `0 < p < 1`.
pub fn weibull_quantile(law: WeibullLaw, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", "0 < p < 1", p));
    }
    Ok(pow(-log1p(-p), 1.0 / law.gamma))
}

/// Inversion of a single uniform: `E^(1/gamma)` with `E = -ln U`.
pub fn sample_weibull<R: Rng + ?Sized>(law: WeibullLaw, rng: &mut R) -> f64 {
    let e = exp1(rng);
    if law.gamma == 1.0 {
        e
    } else {
        pow(e, 1.0 / law.gamma)
    }
}

/// Maps a draw of `W_{gamma'}` to `W_{gamma gamma'}` through `w^(1/gamma)`.
/// With `gamma' = 1` this turns standard exponential draws into `W_gamma`.
pub fn power_transform_identity(gamma: f64, gamma_prime: f64, sample: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain("gamma", "gamma > 0", gamma));
    }
    if !(gamma_prime > 0.0) {
        return Err(Error::domain("gamma_prime", "gamma_prime > 0", gamma_prime));
    }
    if !(sample >= 0.0) {
        return Err(Error::domain("sample", "sample >= 0", sample));
    }
    Ok(if gamma == 1.0 {
        sample
    } else {
        pow(sample, 1.0 / gamma)
    })
}

/// `E W^delta = Gamma(1 + delta/gamma)` for `delta > -gamma`.
pub fn weibull_moment(law: WeibullLaw, delta: f64) -> Result<f64> {
    if !(delta > -law.gamma) {
        return Err(Error::domain("delta", "delta > -gamma", delta));
    }
    gamma_fn(1.0 + delta / law.gamma)
}

pub fn two_sided_cdf(law: TwoSidedWeibullLaw, x: f64) -> f64 {
    if x < 0.0 {
        0.5 * exp(-pow(-x, law.gamma))
    } else {
        1.0 - 0.5 * exp(-pow(x, law.gamma))
    }
}

pub fn two_sided_pdf(law: TwoSidedWeibullLaw, x: f64) -> f64 {
    0.5 * weibull_pdf(law.one_sided(), x.abs())
}

pub fn two_sided_quantile(law: TwoSidedWeibullLaw, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", "0 < p < 1", p));
    }
    let g = 1.0 / law.gamma;
    Ok(if p < 0.5 {
        -pow(-log(2.0 * p), g)
    } else {
        pow(-log(2.0 * (1.0 - p)), g)
    })
}

/// `U W` with a fair sign `U` drawn before the magnitude.
pub fn sample_two_sided<R: Rng + ?Sized>(law: TwoSidedWeibullLaw, rng: &mut R) -> f64 {
    let negative: bool = rng.random();
    let w = sample_weibull(law.one_sided(), rng);
    if negative {
        -w
    } else {
        w
    }
}
