//! Asymmetric Laplace and the two asymmetric Weibull families.
//!
//! The asymmetric Laplace law `Lambda(a1, a2)` has right-tail rate `a1`,
//! left-tail rate `a2` and mass `a1 / (a1 + a2)` on the negative half-line.
//! It is the variance-mean normal mixture
//! `Y = (sigma / sqrt lambda) X sqrt(W_1) + mu W_1 / lambda`, whose
//! characteristic function `lambda / (lambda - i mu t + sigma^2 t^2 / 2)`
//! factors as `1 / ((1 - i w t)(1 + i v t))` with `w - v = mu / lambda` and
//! `v w = sigma^2 / (2 lambda)`. Hence `a1 = 1/w`, `a2 = 1/v`.
//!
//! The first kind scales `Lambda` by `V_gamma`; its CDF is elementary. The
//! second kind is the variance-mean mixture `mu Z + sigma sqrt(Z) X` with `Z`
//! drawn from `H_gamma`. Conditionally on the stable variable behind `Z`, the
//! second kind is again asymmetric Laplace (with `lambda = S^2 / 2`), which
//! is how its CDF and density are evaluated.

use alloc::vec::Vec;

use libm::{asinh, exp, log, pow, sinh, sqrt};
use rand::Rng;

use crate::mixtures::{sample_h_gamma, MixingLawH, MIX_TOL};
use crate::stable::{expect_positive_stable, sample_v_gamma, StableShape};
use crate::stats::{
    exp1, mean_estimate, std_normal, uniform_open01, MeanEstimate, RandomStream, TabulatedCdf,
};
use crate::weibull::{sample_weibull, WeibullLaw};
use crate::{Error, Result};

/// Asymmetric Laplace law with right rate `a1` and left rate `a2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymLaplaceLaw {
    a1: f64,
    a2: f64,
}

impl AsymLaplaceLaw {
    pub fn new(a1: f64, a2: f64) -> Result<Self> {
        check_rate("a1", a1)?;
        check_rate("a2", a2)?;
        Ok(AsymLaplaceLaw { a1, a2 })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    /// Mass of the negative half-line, `a1 / (a1 + a2)`.
    pub fn left_mass(&self) -> f64 {
        self.a1 / (self.a1 + self.a2)
    }

    /// `(v, w) = (1/a2, 1/a1)`.
    pub fn scales(&self) -> (f64, f64) {
        (1.0 / self.a2, 1.0 / self.a1)
    }
}

fn check_rate(name: &'static str, a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(name, "finite and > 0", a))
    }
}

// CDF and density of the asymmetric Laplace law in terms of the scales
// r1 = 1/a1 (right) and r2 = 1/a2 (left). Tolerates a scale at 0 or infinity.
fn laplace_cdf_scales(r1: f64, r2: f64, x: f64) -> f64 {
    if x <= 0.0 {
        let w = 1.0 / (1.0 + r1 / r2);
        if w == 0.0 {
            0.0
        } else {
            w * exp(x / r2)
        }
    } else {
        let w = 1.0 / (1.0 + r2 / r1);
        if w == 0.0 {
            1.0
        } else {
            1.0 - w * exp(-x / r1)
        }
    }
}

fn laplace_pdf_scales(r1: f64, r2: f64, x: f64) -> f64 {
    let s = r1 + r2;
    if x == 0.0 {
        return 1.0 / s;
    }
    let e = if x < 0.0 { x / r2 } else { -x / r1 };
    exp(e - log(s))
}

pub fn asym_laplace_cdf(law: AsymLaplaceLaw, x: f64) -> f64 {
    let (a1, a2) = (law.a1, law.a2);
    if x <= 0.0 {
        a1 / (a1 + a2) * exp(a2 * x)
    } else {
        1.0 - a2 / (a1 + a2) * exp(-a1 * x)
    }
}

pub fn asym_laplace_pdf(law: AsymLaplaceLaw, x: f64) -> f64 {
    let (a1, a2) = (law.a1, law.a2);
    let c = a1 * a2 / (a1 + a2);
    if x <= 0.0 {
        c * exp(a2 * x)
    } else {
        c * exp(-a1 * x)
    }
}

pub fn asym_laplace_quantile(law: AsymLaplaceLaw, p: f64) -> Result<f64> {
    asym_weibull1_quantile(AsymWeibullILaw::new(law.a1, law.a2, 1.0)?, p)
}

/// Direct draw: exponential magnitude, sign chosen with the branch masses.
pub fn sample_asym_laplace<R: Rng + ?Sized>(law: AsymLaplaceLaw, rng: &mut R) -> f64 {
    let e = exp1(rng);
    if uniform_open01(rng) < law.left_mass() {
        -e / law.a2
    } else {
        e / law.a1
    }
}

/// Parameters of the variance-mean mixture
/// `(sigma / sqrt lambda) X sqrt(W_1) + mu W_1 / lambda`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NvmParams {
    mu: f64,
    sigma: f64,
    lambda: f64,
}

impl NvmParams {
    pub fn new(mu: f64, sigma: f64, lambda: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::domain("mu", "finite", mu));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain("sigma", "finite and > 0", sigma));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain("lambda", "finite and > 0", lambda));
        }
        Ok(NvmParams { mu, sigma, lambda })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

// (w, v) from (mu, sigma^2, 2 lambda) without cancellation:
// w = (D + mu) / (2 lambda), v = (D - mu) / (2 lambda), v w = sigma^2 / (2 lambda).
fn nvm_scales(mu: f64, sigma2: f64, two_lambda: f64) -> (f64, f64) {
    let d = libm::hypot(mu, sqrt(two_lambda * sigma2));
    let big = d + mu.abs();
    let (outer, inner) = (big / two_lambda, sigma2 / big);
    if mu >= 0.0 {
        (outer, inner)
    } else {
        (inner, outer)
    }
}

/// Positive root `(v, w)` of `w - v = mu / lambda`, `v w = sigma^2 / (2 lambda)`.
pub fn solve_vw(params: NvmParams) -> (f64, f64) {
    let (w, v) = nvm_scales(params.mu, params.sigma * params.sigma, 2.0 * params.lambda);
    (v, w)
}

/// Rates of the asymmetric Laplace law of the variance-mean mixture:
/// `a1 = (D - mu) / sigma^2`, `a2 = (D + mu) / sigma^2`,
/// `D = sqrt(mu^2 + 2 lambda sigma^2)`.
pub fn nvm_to_rates(params: NvmParams) -> AsymLaplaceLaw {
    let (v, w) = solve_vw(params);
    AsymLaplaceLaw {
        a1: 1.0 / w,
        a2: 1.0 / v,
    }
}

/// Variance-mean parameters with `lambda = 1` that reproduce `law` under
/// [`nvm_to_rates`]: `mu = 1/a1 - 1/a2`, `sigma^2 = 2 / (a1 a2)`.
pub fn rates_to_nvm(law: AsymLaplaceLaw) -> NvmParams {
    NvmParams {
        mu: 1.0 / law.a1 - 1.0 / law.a2,
        sigma: sqrt(2.0 / (law.a1 * law.a2)),
        lambda: 1.0,
    }
}

/// `(sigma / sqrt lambda) X sqrt(W_1) + mu W_1 / lambda`.
pub fn sample_asym_laplace_nvm<R: Rng + ?Sized>(params: NvmParams, rng: &mut R) -> f64 {
    let w = exp1(rng);
    let x = std_normal(rng);
    params.sigma / sqrt(params.lambda) * x * sqrt(w) + params.mu * w / params.lambda
}

/// Characteristic function `lambda / (lambda - i mu t + sigma^2 t^2 / 2)`
/// as `(re, im)`.
pub fn nvm_characteristic_function(params: NvmParams, t: f64) -> (f64, f64) {
    let re = params.lambda + 0.5 * params.sigma * params.sigma * t * t;
    let im = -params.mu * t;
    let den = re * re + im * im;
    (params.lambda * re / den, -params.lambda * im / den)
}

/// Asymmetric Weibull law of the first kind.
///
/// Constructed by [`AsymWeibullILaw::new`] for `0 < gamma <= 1`, where the law
/// is a scale mixture of asymmetric Laplace laws and can be sampled. Shapes
/// `gamma > 1` are accepted by [`AsymWeibullILaw::formal`], which only
/// supports CDF, density and quantile evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymWeibullILaw {
    a1: f64,
    a2: f64,
    gamma: f64,
    formal: bool,
}

impl AsymWeibullILaw {
    pub fn new(a1: f64, a2: f64, gamma: f64) -> Result<Self> {
        check_rate("a1", a1)?;
        check_rate("a2", a2)?;
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::domain("gamma", "0 < gamma <= 1", gamma));
        }
        Ok(AsymWeibullILaw {
            a1,
            a2,
            gamma,
            formal: false,
        })
    }

    /// Any `gamma > 0`; no sampler.
    pub fn formal(a1: f64, a2: f64, gamma: f64) -> Result<Self> {
        check_rate("a1", a1)?;
        check_rate("a2", a2)?;
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::domain("gamma", "finite and > 0", gamma));
        }
        Ok(AsymWeibullILaw {
            a1,
            a2,
            gamma,
            formal: gamma > 1.0,
        })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_formal(&self) -> bool {
        self.formal
    }

    pub fn laplace(&self) -> AsymLaplaceLaw {
        AsymLaplaceLaw {
            a1: self.a1,
            a2: self.a2,
        }
    }
}

pub fn asym_weibull1_cdf(law: AsymWeibullILaw, x: f64) -> f64 {
    let (a1, a2, g) = (law.a1, law.a2, law.gamma);
    if x <= 0.0 {
        a1 / (a1 + a2) * exp(-pow(-a2 * x, g))
    } else {
        1.0 - a2 / (a1 + a2) * exp(-pow(a1 * x, g))
    }
}

pub fn asym_weibull1_pdf(law: AsymWeibullILaw, x: f64) -> f64 {
    let (a1, a2, g) = (law.a1, law.a2, law.gamma);
    if x == 0.0 {
        return if g < 1.0 {
            f64::INFINITY
        } else if g == 1.0 {
            a1 * a2 / (a1 + a2)
        } else {
            0.0
        };
    }
    let (mass, rate, y) = if x < 0.0 {
        (a1 / (a1 + a2), a2, -a2 * x)
    } else {
        (a2 / (a1 + a2), a1, a1 * x)
    };
    let yg = pow(y, g);
    mass * g * rate * yg / y * exp(-yg)
}

pub fn asym_weibull1_quantile(law: AsymWeibullILaw, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", "0 < p < 1", p));
    }
    let (a1, a2, g) = (law.a1, law.a2, law.gamma);
    let left = a1 / (a1 + a2);
    if p <= left {
        Ok(-pow(log(left / p), 1.0 / g) / a2)
    } else {
        // 1 - p = (1 - left) exp(-(a1 x)^g)
        let q = (1.0 - p) / (1.0 - left);
        Ok(pow(-log(q), 1.0 / g) / a1)
    }
}

fn check_sampleable(law: AsymWeibullILaw) -> Result<()> {
    if law.formal {
        Err(Error::domain("gamma", "0 < gamma <= 1 for sampling", law.gamma))
    } else {
        Ok(())
    }
}

/// Scale-location mixture draw `Y V_gamma`, with `Y` the variance-mean
/// mixture of [`rates_to_nvm`].
pub fn sample_asym_weibull1<R: Rng + ?Sized>(law: AsymWeibullILaw, rng: &mut R) -> Result<f64> {
    check_sampleable(law)?;
    let params = rates_to_nvm(law.laplace());
    let y = sample_asym_laplace_nvm(params, rng);
    Ok(y * sample_v_gamma(StableShape::new(law.gamma)?, rng))
}

/// Sign-branch draw: positive with probability `a2 / (a1 + a2)`, then
/// `W_gamma / a1` or `-W_gamma / a2`.
pub fn sample_asym_weibull1_direct<R: Rng + ?Sized>(
    law: AsymWeibullILaw,
    rng: &mut R,
) -> Result<f64> {
    check_sampleable(law)?;
    let w = sample_weibull(WeibullLaw::new(law.gamma)?, rng);
    if uniform_open01(rng) < law.a2 / (law.a1 + law.a2) {
        Ok(w / law.a1)
    } else {
        Ok(-w / law.a2)
    }
}

/// Asymmetric Weibull law of the second kind: `mu Z + sigma sqrt(Z) X` with
/// `Z ~ H_gamma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymWeibullIILaw {
    mu: f64,
    sigma: f64,
    mixing: MixingLawH,
}

impl AsymWeibullIILaw {
    pub fn new(mu: f64, sigma: f64, gamma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::domain("mu", "finite", mu));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain("sigma", "finite and > 0", sigma));
        }
        Ok(AsymWeibullIILaw {
            mu,
            sigma,
            mixing: MixingLawH::new(gamma)?,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn gamma(&self) -> f64 {
        self.mixing.gamma()
    }

    pub fn mixing(&self) -> MixingLawH {
        self.mixing
    }

    /// `E Z = Gamma(1 + 2/gamma)`, so the mean is `mu Gamma(1 + 2/gamma)`.
    pub fn mean(&self) -> f64 {
        self.mu * libm::tgamma(1.0 + 2.0 / self.gamma())
    }

    // Laplace scales conditional on the standard stable value s.
    fn scales_given(&self, s: f64) -> (f64, f64) {
        nvm_scales(self.mu, self.sigma * self.sigma, s * s)
    }
}

/// CDF of the second kind, `E_S[L(x)]` over the conditional asymmetric
/// Laplace laws.
pub fn asym_weibull2_cdf(law: AsymWeibullIILaw, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("x", "not NaN", x));
    }
    if x == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    let shape = law.mixing.stable_shape();
    let v = expect_positive_stable(
        shape,
        |s| {
            let (r1, r2) = law.scales_given(s);
            laplace_cdf_scales(r1, r2, x)
        },
        MIX_TOL,
    )?;
    Ok(v.clamp(0.0, 1.0))
}

/// Density of the second kind. Infinite at 0 when `gamma < 1`.
pub fn asym_weibull2_pdf(law: AsymWeibullIILaw, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("x", "not NaN", x));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let shape = law.mixing.stable_shape();
    if x == 0.0 && !shape.is_degenerate() {
        return Ok(f64::INFINITY);
    }
    expect_positive_stable(
        shape,
        |s| {
            let (r1, r2) = law.scales_given(s);
            laplace_pdf_scales(r1, r2, x)
        },
        MIX_TOL,
    )
}

/// `mu Z + sigma sqrt(Z) X`.
pub fn sample_asym_weibull2<R: Rng + ?Sized>(law: AsymWeibullIILaw, rng: &mut R) -> f64 {
    let z = sample_h_gamma(law.mixing, rng);
    law.mu * z + law.sigma * sqrt(z) * std_normal(rng)
}

/// Monte Carlo estimate of the second-kind CDF from `n` draws.
pub fn asym_weibull2_cdf_monte_carlo<R: Rng + ?Sized>(
    law: AsymWeibullIILaw,
    x: f64,
    n: usize,
    rng: &mut R,
) -> MeanEstimate {
    mean_estimate((0..n).map(|_| {
        if sample_asym_weibull2(law, rng) < x {
            1.0
        } else {
            0.0
        }
    }))
}

/// Draws used by the Monte Carlo fallback of [`asym_weibull2_cdf_checked`].
pub const FALLBACK_DRAWS: usize = 100_000;

/// [`asym_weibull2_cdf`], with a Monte Carlo estimate attached to a
/// quadrature failure.
pub fn asym_weibull2_cdf_checked(law: AsymWeibullIILaw, x: f64, seed: u64) -> Result<f64> {
    match asym_weibull2_cdf(law, x) {
        Err(Error::NumericFailure {
            what,
            estimate,
            residual,
            ..
        }) => {
            let mut rng = RandomStream::new(seed, 0);
            let mc = asym_weibull2_cdf_monte_carlo(law, x, FALLBACK_DRAWS, &mut rng);
            Err(Error::NumericFailure {
                what,
                estimate,
                residual,
                fallback: Some(mc.mean),
            })
        }
        other => other,
    }
}

/// Tolerance in probability of [`asym_weibull2_quantile`].
pub const QUANTILE_TOL: f64 = 1e-6;

/// Quantile of the second kind by bisection on [`asym_weibull2_cdf`].
pub fn asym_weibull2_quantile(law: AsymWeibullIILaw, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", "0 < p < 1", p));
    }
    let cdf = |x| asym_weibull2_cdf(law, x);
    let (mut lo, mut hi) = (-law.sigma, law.sigma);
    while cdf(lo)? > p {
        lo *= 2.0;
        if !lo.is_finite() {
            return Err(Error::domain("p", "quantile within range", p));
        }
    }
    while cdf(hi)? < p {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::domain("p", "quantile within range", p));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f = cdf(mid)?;
        if (f - p).abs() <= QUANTILE_TOL || hi - lo <= 1e-14 * (1.0 + mid.abs()) {
            return Ok(mid);
        }
        if f < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Tabulates the second-kind CDF on `nodes` points spaced uniformly in
/// `asinh(x / c)` (dense near the cusp at 0), spanning the range where
/// both tails exceed `tail`.
pub fn asym_weibull2_table(law: AsymWeibullIILaw, nodes: usize, tail: f64) -> Result<TabulatedCdf> {
    if !(tail > 0.0 && tail < 0.5) {
        return Err(Error::domain("tail", "0 < tail < 1/2", tail));
    }
    let cdf = |x| asym_weibull2_cdf(law, x);
    let (mut lo, mut hi) = (-law.sigma, law.sigma);
    while cdf(lo)? > tail {
        lo *= 2.0;
    }
    while 1.0 - cdf(hi)? > tail {
        hi *= 2.0;
    }
    let c = 1e-4 * law.sigma;
    let (ua, ub) = (asinh(lo / c), asinh(hi / c));
    let n = nodes.max(3);
    let grid: Vec<f64> = (0..n)
        .map(|i| c * sinh(ua + (ub - ua) * i as f64 / (n - 1) as f64))
        .collect();
    TabulatedCdf::from_fn(&grid, cdf)
}

/// Inverse-CDF draw from a tabulated law.
pub fn sample_tabulated<R: Rng + ?Sized>(table: &TabulatedCdf, rng: &mut R) -> f64 {
    table.quantile(uniform_open01(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::quadrature::integrate_semi_infinite;
    use crate::stats::{
        empirical_cf, ks_one_sample, ks_two_sample, EmpiricalSample, Tolerance,
    };
    use crate::weibull::{two_sided_cdf, TwoSidedWeibullLaw};
    use proptest::prelude::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;
    const SQRT2: f64 = core::f64::consts::SQRT_2;
    const N: usize = 200_000;

    fn draws<F: FnMut(&mut RandomStream) -> f64>(seed: u64, n: usize, mut f: F) -> EmpiricalSample {
        let mut rng = RandomStream::new(seed, 0);
        EmpiricalSample::new((0..n).map(|_| f(&mut rng)).collect()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn laplace_reference_values() {
        let l = AsymLaplaceLaw::new(0.5, 2.0).unwrap();
        assert_eq!(asym_laplace_cdf(l, 0.0), 0.2);
        let s = AsymLaplaceLaw::new(1.0, 1.0).unwrap();
        assert_eq!(asym_laplace_cdf(s, 0.0), 0.5);
        assert!(close(asym_laplace_cdf(s, 1.0), 1.0 - 0.5 * exp(-1.0), 1e-15));
        assert!(close(asym_laplace_pdf(l, -1.0), 0.4 * exp(-2.0), 1e-15));
        assert!(AsymLaplaceLaw::new(0.0, 1.0).is_err());
        assert!(AsymLaplaceLaw::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn laplace_pdf_normalizes() {
        let l = AsymLaplaceLaw::new(0.3, 1.7).unwrap();
        let tol = Tolerance::new(1e-13, 1e-12);
        let right = integrate_semi_infinite(|x| asym_laplace_pdf(l, x), 0.0, tol).unwrap();
        let left = integrate_semi_infinite(|x| asym_laplace_pdf(l, -x), 0.0, tol).unwrap();
        assert!((right.value + left.value - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rates_reference_values() {
        let r = nvm_to_rates(NvmParams::new(0.0, 1.0, 1.0).unwrap());
        assert!(close(r.a1(), SQRT2, 1e-15) && close(r.a2(), SQRT2, 1e-15));
        let r = nvm_to_rates(NvmParams::new(1.0, 1.0, 1.0).unwrap());
        assert!(close(r.a1(), SQRT3 - 1.0, 1e-15));
        assert!(close(r.a2(), SQRT3 + 1.0, 1e-15));
        let r = nvm_to_rates(NvmParams::new(0.0, 1.0, 0.5).unwrap());
        assert!(close(r.a1(), 1.0, 1e-15) && close(r.a2(), 1.0, 1e-15));
        let r = nvm_to_rates(NvmParams::new(1.0, 1.0, 0.5).unwrap());
        assert!(close(r.a1(), 1.0 / (SQRT2 + 1.0), 1e-15));
        assert!(close(r.a2(), 1.0 / (SQRT2 - 1.0), 1e-15));
    }

    #[test]
    fn vw_reference_values() {
        let (v, w) = solve_vw(NvmParams::new(0.0, 3.0, 2.0).unwrap());
        assert!(close(v, 1.5, 1e-15) && close(w, 1.5, 1e-15));
        let (v, w) = solve_vw(NvmParams::new(1.0, 1.0, 1.0).unwrap());
        assert!(close(v, (SQRT3 - 1.0) / 2.0, 1e-15));
        assert!(close(w, (SQRT3 + 1.0) / 2.0, 1e-15));
    }

    #[test]
    fn params_validation() {
        assert!(NvmParams::new(0.0, 0.0, 1.0).is_err());
        assert!(NvmParams::new(0.0, 1.0, -1.0).is_err());
        assert!(NvmParams::new(f64::INFINITY, 1.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn rate_identities(mu in -50.0f64..50.0, sigma in 0.01f64..20.0, lambda in 0.01f64..20.0) {
            let p = NvmParams::new(mu, sigma, lambda).unwrap();
            let r = nvm_to_rates(p);
            prop_assert!(r.a1() > 0.0 && r.a2() > 0.0);
            let prod = r.a1() * r.a2() * sigma * sigma / (2.0 * lambda);
            prop_assert!((prod - 1.0).abs() < 1e-12, "{}", prod);
            let diff = 1.0 / r.a1() - 1.0 / r.a2();
            prop_assert!((diff - mu / lambda).abs() < 1e-12 * (1.0 + (mu / lambda).abs()) * 4.0);
            let (v, w) = solve_vw(p);
            prop_assert!(v > 0.0 && w > 0.0);
            prop_assert!((w - v - mu / lambda).abs() <= 1e-12 * (w + v));
            prop_assert!(((1.0 / w) / r.a1() - 1.0).abs() < 1e-15);
            prop_assert!(((1.0 / v) / r.a2() - 1.0).abs() < 1e-15);
        }

        #[test]
        fn witness_round_trip(a1 in 0.01f64..50.0, a2 in 0.01f64..50.0) {
            let l = AsymLaplaceLaw::new(a1, a2).unwrap();
            let back = nvm_to_rates(rates_to_nvm(l));
            prop_assert!((back.a1() / a1 - 1.0).abs() < 1e-12);
            prop_assert!((back.a2() / a2 - 1.0).abs() < 1e-12);
        }

        #[test]
        fn first_kind_is_continuous_and_monotone(
            a1 in 0.05f64..20.0, a2 in 0.05f64..20.0, g in 0.05f64..1.0,
            x in -50.0f64..50.0, dx in 0.0f64..5.0,
        ) {
            let law = AsymWeibullILaw::new(a1, a2, g).unwrap();
            let at0 = asym_weibull1_cdf(law, 0.0);
            prop_assert!((at0 - a1 / (a1 + a2)).abs() < 1e-15);
            prop_assert!((asym_weibull1_cdf(law, 1e-300) - at0).abs() < 1e-12);
            prop_assert!(asym_weibull1_cdf(law, x + dx) >= asym_weibull1_cdf(law, x));
        }

        #[test]
        fn first_kind_quantile_round_trip(
            a1 in 0.05f64..20.0, a2 in 0.05f64..20.0, g in 0.1f64..3.0, p in 0.001f64..0.999,
        ) {
            let law = AsymWeibullILaw::formal(a1, a2, g).unwrap();
            let x = asym_weibull1_quantile(law, p).unwrap();
            prop_assert!((asym_weibull1_cdf(law, x) - p).abs() < 1e-12);
        }
    }

    #[test]
    fn spec_identities_at_half_lambda() {
        for &(mu, sigma) in &[(-0.5, 2.0), (1.0, 1.0), (3.0, 0.2)] {
            let r = nvm_to_rates(NvmParams::new(mu, sigma, 0.5).unwrap());
            assert!((r.a1() * r.a2() * sigma * sigma - 1.0).abs() < 1e-12);
            assert!((1.0 / r.a1() - 1.0 / r.a2() - 2.0 * mu).abs() < 1e-12);
        }
    }

    #[test]
    fn nvm_sampler_matches_rates() {
        for (i, &(mu, sigma, lambda)) in [(1.0, 1.0, 1.0), (-0.5, 2.0, 0.5), (0.0, 1.0, 1.0)]
            .iter()
            .enumerate()
        {
            let p = NvmParams::new(mu, sigma, lambda).unwrap();
            let l = nvm_to_rates(p);
            let s = draws(30 + i as u64, N, |r| sample_asym_laplace_nvm(p, r));
            let ks = ks_one_sample(&s, |x| asym_laplace_cdf(l, x));
            assert!(ks.statistic < 0.01, "{mu} {sigma} {lambda}: {}", ks.statistic);
        }
    }

    #[test]
    fn nvm_symmetric_case_is_symmetric() {
        let p = NvmParams::new(0.0, 1.5, 2.0).unwrap();
        let s = draws(33, N, |r| sample_asym_laplace_nvm(p, r));
        let neg = s.map(|x| -x).unwrap();
        assert!(ks_two_sample(&s, &neg).statistic < 0.012);
    }

    #[test]
    fn nvm_characteristic_function() {
        let p = NvmParams::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(super::nvm_characteristic_function(p, 0.0), (1.0, 0.0));
        let (re, im) = super::nvm_characteristic_function(p, 1.0);
        // 1 / (1.5 - i) = (1.5 + i) / 3.25
        assert!(close(re, 1.5 / 3.25, 1e-15) && close(im, 1.0 / 3.25, 1e-15));
        let s = draws(34, N, |r| sample_asym_laplace_nvm(p, r));
        let est = empirical_cf(s.values(), 1.0);
        assert!(est.within(re, im, 4.0));
        // CF of the rate form: 1 / ((1 - i w t)(1 + i v t))
        let (v, w) = solve_vw(p);
        let (dr, di) = (1.0 + v * w, v - w);
        let den = dr * dr + di * di;
        assert!(close(re, dr / den, 1e-14) && close(im, -di / den, 1e-14));
    }

    #[test]
    fn direct_laplace_sampler() {
        let l = AsymLaplaceLaw::new(0.7, 2.2).unwrap();
        let s = draws(35, N, |r| sample_asym_laplace(l, r));
        assert!(ks_one_sample(&s, |x| asym_laplace_cdf(l, x)).statistic < 0.01);
    }

    #[test]
    fn laplace_quantile_inverts_cdf() {
        let l = AsymLaplaceLaw::new(0.7, 2.2).unwrap();
        for &p in &[0.01, 0.2, 0.5, 0.99] {
            let x = asym_laplace_quantile(l, p).unwrap();
            assert!((asym_laplace_cdf(l, x) - p).abs() < 1e-14);
        }
    }

    #[test]
    fn first_kind_reference_and_reductions() {
        let law = AsymWeibullILaw::new(0.5, 2.0, 0.5).unwrap();
        assert_eq!(asym_weibull1_cdf(law, 0.0), 0.2);
        let sym = AsymWeibullILaw::new(1.0, 1.0, 0.6).unwrap();
        let t = TwoSidedWeibullLaw::new(0.6).unwrap();
        for i in -40..=40 {
            let x = i as f64 * 0.25;
            assert!((asym_weibull1_cdf(sym, x) - two_sided_cdf(t, x)).abs() < 1e-12);
        }
        let l1 = AsymWeibullILaw::new(0.4, 1.9, 1.0).unwrap();
        for i in -40..=40 {
            let x = i as f64 * 0.25;
            assert!((asym_weibull1_cdf(l1, x) - asym_laplace_cdf(l1.laplace(), x)).abs() < 1e-12);
            assert!((asym_weibull1_pdf(l1, x) - asym_laplace_pdf(l1.laplace(), x)).abs() < 1e-12);
        }
        assert!(AsymWeibullILaw::new(1.0, 1.0, 1.5).is_err());
        assert!(AsymWeibullILaw::formal(1.0, 1.0, 1.5).unwrap().is_formal());
        assert!(!AsymWeibullILaw::formal(1.0, 1.0, 0.5).unwrap().is_formal());
    }

    #[test]
    fn first_kind_pdf_normalizes_and_differentiates() {
        for &g in &[0.5, 1.0, 2.5] {
            let law = AsymWeibullILaw::formal(0.6, 1.8, g).unwrap();
            let tol = Tolerance::new(1e-13, 1e-12);
            let right = integrate_semi_infinite(|x| asym_weibull1_pdf(law, x), 0.0, tol).unwrap();
            let left = integrate_semi_infinite(|x| asym_weibull1_pdf(law, -x), 0.0, tol).unwrap();
            assert!((right.value + left.value - 1.0).abs() < 1e-8, "g = {g}");
            for &x in &[-2.0, -0.3, 0.4, 3.0] {
                let h = 1e-6;
                let fd = (asym_weibull1_cdf(law, x + h) - asym_weibull1_cdf(law, x - h)) / (2.0 * h);
                assert!((fd - asym_weibull1_pdf(law, x)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn formal_law_has_no_sampler() {
        let law = AsymWeibullILaw::formal(1.0, 1.0, 2.0).unwrap();
        let mut rng = RandomStream::new(0, 0);
        assert!(sample_asym_weibull1(law, &mut rng).is_err());
        assert!(sample_asym_weibull1_direct(law, &mut rng).is_err());
    }

    #[test]
    fn first_kind_samplers() {
        let laplace = AsymWeibullILaw::new(1.0, 1.0, 1.0).unwrap();
        let s = draws(36, N, |r| sample_asym_weibull1(laplace, r).unwrap());
        assert!(ks_one_sample(&s, |x| asym_laplace_cdf(laplace.laplace(), x)).statistic < 0.01);

        let law = AsymWeibullILaw::new(0.36603, 1.36603, 0.5).unwrap();
        let mix = draws(37, N, |r| sample_asym_weibull1(law, r).unwrap());
        let direct = draws(38, N, |r| sample_asym_weibull1_direct(law, r).unwrap());
        assert!(ks_one_sample(&mix, |x| asym_weibull1_cdf(law, x)).statistic < 0.01);
        assert!(ks_one_sample(&direct, |x| asym_weibull1_cdf(law, x)).statistic < 0.01);
        assert!(ks_two_sample(&mix, &direct).statistic < 0.012);
    }

    #[test]
    fn second_kind_symmetric_reduction() {
        for &g in &[0.5, 0.8] {
            let law = AsymWeibullIILaw::new(0.0, 1.0, g).unwrap();
            let t = TwoSidedWeibullLaw::new(g).unwrap();
            for &x in &[-1.0, 0.0, 1.0, 3.0] {
                let c = asym_weibull2_cdf(law, x).unwrap();
                assert!((c - two_sided_cdf(t, x)).abs() < 1e-4, "g = {g}, x = {x}: {c}");
            }
        }
    }

    #[test]
    fn second_kind_symmetric_reduction_with_scale() {
        // sigma rescales: W_II(mu = 0, sigma) at x equals the two-sided CDF at x / sigma
        let law = AsymWeibullIILaw::new(0.0, 2.5, 0.7).unwrap();
        let t = TwoSidedWeibullLaw::new(0.7).unwrap();
        let c = asym_weibull2_cdf(law, 1.3).unwrap();
        assert!((c - two_sided_cdf(t, 1.3 / 2.5)).abs() < 1e-8);
    }

    #[test]
    fn second_kind_laplace_case() {
        let law = AsymWeibullIILaw::new(1.0, 1.0, 1.0).unwrap();
        let l = AsymLaplaceLaw::new(1.0 / (SQRT2 + 1.0), 1.0 / (SQRT2 - 1.0)).unwrap();
        for i in -20..=20 {
            let x = i as f64 * 0.5;
            assert!((asym_weibull2_cdf(law, x).unwrap() - asym_laplace_cdf(l, x)).abs() < 1e-4);
            assert!((asym_weibull2_pdf(law, x).unwrap() - asym_laplace_pdf(l, x)).abs() < 1e-12);
        }
    }

    #[test]
    fn second_kind_limits_and_monotone() {
        let law = AsymWeibullIILaw::new(1.0, 1.0, 0.5).unwrap();
        assert_eq!(asym_weibull2_cdf(law, f64::NEG_INFINITY).unwrap(), 0.0);
        assert_eq!(asym_weibull2_cdf(law, f64::INFINITY).unwrap(), 1.0);
        assert!(asym_weibull2_cdf(law, -1e6).unwrap() < 1e-6);
        assert!(asym_weibull2_cdf(law, 1e8).unwrap() > 1.0 - 1e-6);
        let mut prev = 0.0;
        for i in 0..100 {
            let x = -20.0 + 0.5 * i as f64;
            let c = asym_weibull2_cdf(law, x).unwrap();
            assert!(c >= prev, "x = {x}");
            prev = c;
        }
    }

    #[test]
    fn second_kind_cdf_vs_monte_carlo() {
        let law = AsymWeibullIILaw::new(-0.5, 2.0, 0.7).unwrap();
        let mut rng = RandomStream::new(39, 0);
        for &x in &[-3.0, 0.0, 2.0] {
            let q = asym_weibull2_cdf(law, x).unwrap();
            let mc = asym_weibull2_cdf_monte_carlo(law, x, 400_000, &mut rng);
            assert!(mc.within(q, 4.0), "x = {x}: {q} vs {mc:?}");
        }
    }

    #[test]
    fn second_kind_pdf_is_derivative() {
        let law = AsymWeibullIILaw::new(1.0, 1.0, 0.5).unwrap();
        for &x in &[-2.0, -0.5, 0.7, 5.0] {
            let h = 1e-4;
            let fd = (asym_weibull2_cdf(law, x + h).unwrap() - asym_weibull2_cdf(law, x - h).unwrap())
                / (2.0 * h);
            let p = asym_weibull2_pdf(law, x).unwrap();
            assert!((fd - p).abs() < 1e-5 * (1.0 + p), "x = {x}");
        }
        assert_eq!(asym_weibull2_pdf(law, 0.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn second_kind_mean() {
        let law = AsymWeibullIILaw::new(0.5, 1.0, 0.8).unwrap();
        let mut rng = RandomStream::new(40, 0);
        let e = mean_estimate((0..N).map(|_| sample_asym_weibull2(law, &mut rng)));
        assert!(e.within(law.mean(), 4.0), "{e:?} vs {}", law.mean());
    }

    #[test]
    fn second_kind_quantile() {
        let law = AsymWeibullIILaw::new(1.0, 1.0, 0.5).unwrap();
        for &p in &[0.05, 0.3, 0.5, 0.9] {
            let x = asym_weibull2_quantile(law, p).unwrap();
            assert!((asym_weibull2_cdf(law, x).unwrap() - p).abs() <= QUANTILE_TOL);
        }
        assert!(asym_weibull2_quantile(law, 1.0).is_err());
    }

    #[test]
    fn second_kind_sampler_vs_quantile_resample() {
        for (i, &(g, mu, sigma)) in [(0.5, 1.0, 1.0), (0.7, -0.5, 2.0)].iter().enumerate() {
            let law = AsymWeibullIILaw::new(mu, sigma, g).unwrap();
            let table = asym_weibull2_table(law, 800, 1e-7).unwrap();
            let a = draws(41 + i as u64, N, |r| sample_asym_weibull2(law, r));
            let b = draws(51 + i as u64, N, |r| sample_tabulated(&table, r));
            let ks = ks_two_sample(&a, &b).statistic;
            assert!(ks < 0.012, "({g}, {mu}, {sigma}): {ks}");
        }
    }

    #[test]
    fn checked_cdf_passes_through() {
        let law = AsymWeibullIILaw::new(1.0, 1.0, 0.5).unwrap();
        let a = asym_weibull2_cdf_checked(law, 0.3, 1).unwrap();
        assert_eq!(a, asym_weibull2_cdf(law, 0.3).unwrap());
    }
}
