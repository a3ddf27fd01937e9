//! A single handle over every law in the crate, for callers that pick the law
//! at run time.

use alloc::vec;
use alloc::vec::Vec;

use libm::{exp, pow};
use rand::Rng;

use crate::asymmetric::{
    asym_weibull1_cdf, asym_weibull1_pdf, asym_weibull1_quantile, asym_weibull2_cdf,
    asym_weibull2_pdf, asym_weibull2_quantile, sample_asym_weibull1, sample_asym_weibull2,
    AsymWeibullIILaw, AsymWeibullILaw,
};
use crate::stable::{
    cdf_positive_stable, density_positive_stable, moment_positive_stable, moment_symmetric_stable,
    sample_positive_stable_std, sample_symmetric_stable, StableShape, SymmetricStableShape,
};
use crate::stats::gamma_fn;
use crate::weibull::{
    sample_two_sided, sample_weibull, two_sided_cdf, two_sided_pdf, two_sided_quantile,
    weibull_cdf, weibull_moment, weibull_pdf, weibull_quantile, TwoSidedWeibullLaw, WeibullLaw,
};
use crate::{Error, Result};

/// The Weibull-type families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeibullFamilyLaw {
    OneSided(WeibullLaw),
    TwoSided(TwoSidedWeibullLaw),
    AsymFirst(AsymWeibullILaw),
    AsymSecond(AsymWeibullIILaw),
}

/// Which variable built from a positive stable law is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableConvention {
    /// `S` with `E exp(-s S) = exp(-s^gamma)`.
    Standard,
    /// `2 S`.
    Doubled,
    /// `1 / S`.
    Reciprocal,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StableLaw {
    Positive(StableShape, StableConvention),
    Symmetric(SymmetricStableShape),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Law {
    Family(WeibullFamilyLaw),
    Stable(StableLaw),
}

impl From<WeibullFamilyLaw> for Law {
    fn from(l: WeibullFamilyLaw) -> Self {
        Law::Family(l)
    }
}

impl From<StableLaw> for Law {
    fn from(l: StableLaw) -> Self {
        Law::Stable(l)
    }
}

impl Law {
    /// Short identifier used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Law::Family(WeibullFamilyLaw::OneSided(_)) => "weibull",
            Law::Family(WeibullFamilyLaw::TwoSided(_)) => "two-sided-weibull",
            Law::Family(WeibullFamilyLaw::AsymFirst(_)) => "asym-weibull1",
            Law::Family(WeibullFamilyLaw::AsymSecond(_)) => "asym-weibull2",
            Law::Stable(StableLaw::Positive(_, StableConvention::Standard)) => "stable",
            Law::Stable(StableLaw::Positive(_, StableConvention::Doubled)) => "stable-doubled",
            Law::Stable(StableLaw::Positive(_, StableConvention::Reciprocal)) => "stable-reciprocal",
            Law::Stable(StableLaw::Symmetric(_)) => "symmetric-stable",
        }
    }

    /// Parameter names and values, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Law::Family(WeibullFamilyLaw::OneSided(l)) => vec![("gamma", l.gamma())],
            Law::Family(WeibullFamilyLaw::TwoSided(l)) => vec![("gamma", l.gamma())],
            Law::Family(WeibullFamilyLaw::AsymFirst(l)) => {
                vec![("a1", l.a1()), ("a2", l.a2()), ("gamma", l.gamma())]
            }
            Law::Family(WeibullFamilyLaw::AsymSecond(l)) => {
                vec![("mu", l.mu()), ("sigma", l.sigma()), ("gamma", l.gamma())]
            }
            Law::Stable(StableLaw::Positive(s, _)) => vec![("gamma", s.gamma())],
            Law::Stable(StableLaw::Symmetric(s)) => vec![("alpha", s.alpha())],
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        Ok(match *self {
            Law::Family(WeibullFamilyLaw::OneSided(l)) => sample_weibull(l, rng),
            Law::Family(WeibullFamilyLaw::TwoSided(l)) => sample_two_sided(l, rng),
            Law::Family(WeibullFamilyLaw::AsymFirst(l)) => sample_asym_weibull1(l, rng)?,
            Law::Family(WeibullFamilyLaw::AsymSecond(l)) => sample_asym_weibull2(l, rng),
            Law::Stable(StableLaw::Positive(s, c)) => {
                let x = sample_positive_stable_std(s, rng);
                match c {
                    StableConvention::Standard => x,
                    StableConvention::Doubled => 2.0 * x,
                    StableConvention::Reciprocal => 1.0 / x,
                }
            }
            Law::Stable(StableLaw::Symmetric(s)) => sample_symmetric_stable(s, rng),
        })
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::domain("x", "not NaN", x));
        }
        match *self {
            Law::Family(WeibullFamilyLaw::OneSided(l)) => Ok(weibull_cdf(l, x)),
            Law::Family(WeibullFamilyLaw::TwoSided(l)) => Ok(two_sided_cdf(l, x)),
            Law::Family(WeibullFamilyLaw::AsymFirst(l)) => Ok(asym_weibull1_cdf(l, x)),
            Law::Family(WeibullFamilyLaw::AsymSecond(l)) => asym_weibull2_cdf(l, x),
            Law::Stable(StableLaw::Positive(s, c)) => match c {
                StableConvention::Standard => cdf_positive_stable(s, x),
                StableConvention::Doubled => cdf_positive_stable(s, 0.5 * x),
                StableConvention::Reciprocal => {
                    if x <= 0.0 {
                        Ok(0.0)
                    } else if s.is_degenerate() {
                        Ok(if x >= 1.0 { 1.0 } else { 0.0 })
                    } else {
                        Ok(1.0 - cdf_positive_stable(s, 1.0 / x)?)
                    }
                }
            },
            Law::Stable(StableLaw::Symmetric(_)) => Err(Error::Unsupported("cdf")),
        }
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::domain("x", "not NaN", x));
        }
        match *self {
            Law::Family(WeibullFamilyLaw::OneSided(l)) => Ok(weibull_pdf(l, x)),
            Law::Family(WeibullFamilyLaw::TwoSided(l)) => Ok(two_sided_pdf(l, x)),
            Law::Family(WeibullFamilyLaw::AsymFirst(l)) => Ok(asym_weibull1_pdf(l, x)),
            Law::Family(WeibullFamilyLaw::AsymSecond(l)) => asym_weibull2_pdf(l, x),
            Law::Stable(StableLaw::Positive(s, c)) => match c {
                StableConvention::Standard => density_positive_stable(s, x),
                StableConvention::Doubled => Ok(0.5 * density_positive_stable(s, 0.5 * x)?),
                StableConvention::Reciprocal => {
                    if x <= 0.0 {
                        Ok(0.0)
                    } else {
                        Ok(density_positive_stable(s, 1.0 / x)? / (x * x))
                    }
                }
            },
            Law::Stable(StableLaw::Symmetric(_)) => Err(Error::Unsupported("pdf")),
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain("p", "0 < p < 1", p));
        }
        match *self {
            Law::Family(WeibullFamilyLaw::OneSided(l)) => weibull_quantile(l, p),
            Law::Family(WeibullFamilyLaw::TwoSided(l)) => two_sided_quantile(l, p),
            Law::Family(WeibullFamilyLaw::AsymFirst(l)) => asym_weibull1_quantile(l, p),
            Law::Family(WeibullFamilyLaw::AsymSecond(l)) => asym_weibull2_quantile(l, p),
            Law::Stable(StableLaw::Positive(s, c)) => {
                if s.is_degenerate() {
                    return Ok(match c {
                        StableConvention::Doubled => 2.0,
                        _ => 1.0,
                    });
                }
                match c {
                    StableConvention::Standard => positive_quantile(|x| cdf_positive_stable(s, x), p),
                    StableConvention::Doubled => {
                        Ok(2.0 * positive_quantile(|x| cdf_positive_stable(s, x), p)?)
                    }
                    StableConvention::Reciprocal => {
                        Ok(1.0 / positive_quantile(|x| cdf_positive_stable(s, x), 1.0 - p)?)
                    }
                }
            }
            Law::Stable(StableLaw::Symmetric(_)) => Err(Error::Unsupported("quantile")),
        }
    }

    /// Absolute moment `E |X|^beta` where a closed form exists.
    pub fn abs_moment(&self, beta: f64) -> Result<f64> {
        match *self {
            Law::Family(WeibullFamilyLaw::OneSided(l)) => weibull_moment(l, beta),
            Law::Family(WeibullFamilyLaw::TwoSided(l)) => weibull_moment(l.one_sided(), beta),
            Law::Family(WeibullFamilyLaw::AsymFirst(l)) => {
                let m = weibull_moment(WeibullLaw::new(l.gamma())?, beta)?;
                let (a1, a2) = (l.a1(), l.a2());
                Ok(m * (a1 * pow(a2, -beta) + a2 * pow(a1, -beta)) / (a1 + a2))
            }
            Law::Family(WeibullFamilyLaw::AsymSecond(_)) => Err(Error::Unsupported("absolute moment")),
            Law::Stable(StableLaw::Positive(s, c)) => match c {
                StableConvention::Doubled => moment_positive_stable(s, beta),
                StableConvention::Standard => Ok(moment_positive_stable(s, beta)? * pow(2.0, -beta)),
                StableConvention::Reciprocal => {
                    // E S^-beta = Gamma(1 + beta/gamma) / Gamma(1 + beta)
                    if !(beta > 0.0) {
                        return Err(Error::domain("beta", "beta > 0", beta));
                    }
                    Ok(gamma_fn(1.0 + beta / s.gamma())? / gamma_fn(1.0 + beta)?)
                }
            },
            Law::Stable(StableLaw::Symmetric(s)) => moment_symmetric_stable(s, beta),
        }
    }

    /// Mean where it is finite and known in closed form.
    pub fn mean(&self) -> Result<f64> {
        match *self {
            Law::Family(WeibullFamilyLaw::OneSided(l)) => weibull_moment(l, 1.0),
            Law::Family(WeibullFamilyLaw::TwoSided(_)) => Ok(0.0),
            Law::Family(WeibullFamilyLaw::AsymFirst(l)) => {
                let m = weibull_moment(WeibullLaw::new(l.gamma())?, 1.0)?;
                let (a1, a2) = (l.a1(), l.a2());
                Ok(m * (a2 / a1 - a1 / a2) / (a1 + a2))
            }
            Law::Family(WeibullFamilyLaw::AsymSecond(l)) => Ok(l.mean()),
            Law::Stable(StableLaw::Positive(s, c)) => match c {
                StableConvention::Reciprocal => self.abs_moment(1.0),
                _ if s.is_degenerate() => Ok(if c == StableConvention::Doubled { 2.0 } else { 1.0 }),
                _ => Err(Error::Unsupported("mean (infinite)")),
            },
            Law::Stable(StableLaw::Symmetric(s)) => {
                if s.alpha() > 1.0 {
                    Ok(0.0)
                } else {
                    Err(Error::Unsupported("mean (undefined)"))
                }
            }
        }
    }
}

// Quantile of a law on (0, inf) by bisection in log x.
fn positive_quantile<F: FnMut(f64) -> Result<f64>>(mut cdf: F, p: f64) -> Result<f64> {
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    while cdf(exp(lo))? > p {
        lo *= 2.0;
        if lo < -700.0 {
            return Ok(0.0);
        }
    }
    while cdf(exp(hi))? < p {
        hi *= 2.0;
        if hi > 700.0 {
            return Ok(f64::INFINITY);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if cdf(exp(mid))? < p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(exp(0.5 * (lo + hi)))
}
