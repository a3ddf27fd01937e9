//! Product and mixture representations of the Weibull laws.
//!
//! Every sampler here draws the same law as a closed-form sampler in
//! [`crate::weibull`] by a different route; the test-suite checks them
//! against each other.
//!
//! The mixing law `H_gamma` is the law of `2 W_1 V_gamma^2 = 2 W_1 / S^2`
//! (`S` standard positive stable). It turns the symmetric two-sided Weibull
//! law into a normal scale mixture: `P(W~ < x) = int Phi(x / sqrt y) dH(y)`.
//! Given `S`, the variable is exponential with rate `S^2 / 2`, so
//! `1 - H(y) = E exp(-y S^2 / 2)` and `h(y) = E[(S^2/2) exp(-y S^2/2)]`.

use alloc::vec::Vec;

use libm::{exp, expm1, log, pow, sqrt};
use rand::Rng;

use crate::stable::{expect_positive_stable, sample_positive_stable_std, sample_v_gamma, StableShape};
use crate::stats::quadrature::integrate_log_scale;
use crate::stats::{exp1, std_normal, std_normal_cdf, TabulatedCdf, Tolerance};
use crate::weibull::{sample_two_sided, sample_weibull, TwoSidedWeibullLaw, WeibullLaw};
use crate::{Error, Result};

/// Tolerance for expectations over the stable law used by this module.
pub(crate) const MIX_TOL: Tolerance = Tolerance::new(1e-13, 1e-10);

/// The mixing law `H_gamma`, `0 < gamma <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingLawH {
    shape: StableShape,
}

impl MixingLawH {
    pub fn new(gamma: f64) -> Result<Self> {
        Ok(MixingLawH {
            shape: StableShape::new(gamma)?,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.shape.gamma()
    }

    pub fn stable_shape(&self) -> StableShape {
        self.shape
    }
}

fn unit_shape(gamma: f64) -> Result<StableShape> {
    StableShape::new(gamma)
}

/// `sqrt(2 W_1) |X|`, which is again standard exponential.
pub fn sample_w1_product<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    sqrt(2.0 * exp1(rng)) * std_normal(rng).abs()
}

/// `|X| sqrt(W_1)`, exponential with rate `sqrt 2`.
pub fn sample_w1_product_scaled<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    sqrt(exp1(rng)) * std_normal(rng).abs()
}

/// `W_gamma` as a Rayleigh scale mixture: `W_2 sqrt(V_{gamma/2})`,
/// `0 < gamma <= 2`.
pub fn sample_weibull_via_rayleigh<R: Rng + ?Sized>(gamma: f64, rng: &mut R) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 2.0) {
        return Err(Error::domain("gamma", "0 < gamma <= 2", gamma));
    }
    let v = sample_v_gamma(unit_shape(0.5 * gamma)?, rng);
    let rayleigh = sample_weibull(WeibullLaw::new(2.0)?, rng);
    Ok(rayleigh * sqrt(v))
}

/// `W_gamma` as a mixed exponential: `W_1 V_gamma`, `0 < gamma <= 1`.
pub fn sample_weibull_via_mixed_exponential<R: Rng + ?Sized>(
    gamma: f64,
    rng: &mut R,
) -> Result<f64> {
    let v = sample_v_gamma(unit_shape(gamma)?, rng);
    Ok(exp1(rng) * v)
}

/// `W_gamma` as a half-normal scale mixture: `|X| sqrt(2 W_1 V_gamma^2)`,
/// `0 < gamma <= 1`.
pub fn sample_weibull_via_halfnormal<R: Rng + ?Sized>(gamma: f64, rng: &mut R) -> Result<f64> {
    let v = sample_v_gamma(unit_shape(gamma)?, rng);
    Ok(std_normal(rng).abs() * v * sqrt(2.0 * exp1(rng)))
}

/// `W_gamma` as a Weibull scale mixture: `W_delta V_alpha^(1/delta)` with
/// `alpha = gamma / delta`, for `delta > gamma > 0`.
pub fn sample_weibull_via_weibull<R: Rng + ?Sized>(
    gamma: f64,
    delta: f64,
    rng: &mut R,
) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain("gamma", "gamma > 0", gamma));
    }
    if !(delta > gamma) || !delta.is_finite() {
        return Err(Error::domain("delta", "delta > gamma", delta));
    }
    let v = sample_v_gamma(unit_shape(gamma / delta)?, rng);
    let w = sample_weibull(WeibullLaw::new(delta)?, rng);
    Ok(w * pow(v, 1.0 / delta))
}

/// `1 - H_gamma(y) = E exp(-y S^2 / 2)`, accurate in relative terms deep into
/// the tail.
pub fn h_gamma_sf(law: MixingLawH, y: f64) -> Result<f64> {
    if y.is_nan() {
        return Err(Error::domain("y", "y >= 0", y));
    }
    if y <= 0.0 {
        return Ok(1.0);
    }
    if law.shape.is_degenerate() {
        return Ok(exp(-0.5 * y));
    }
    expect_positive_stable(law.shape, |s| exp(-0.5 * y * s * s), MIX_TOL)
}

/// `H_gamma(y) = P(2 W_1 V_gamma^2 < y)`.
pub fn h_gamma_cdf(law: MixingLawH, y: f64) -> Result<f64> {
    if y.is_nan() {
        return Err(Error::domain("y", "y >= 0", y));
    }
    if y <= 0.0 {
        return Ok(0.0);
    }
    if law.shape.is_degenerate() {
        return Ok(-expm1(-0.5 * y));
    }
    let sf = h_gamma_sf(law, y)?;
    if sf < 0.5 {
        return Ok(1.0 - sf);
    }
    // small y: integrate 1 - exp(.) directly to keep relative accuracy
    let v = expect_positive_stable(law.shape, |s| -expm1(-0.5 * y * s * s), MIX_TOL)?;
    Ok(v.clamp(0.0, 1.0))
}

/// Density `h_gamma(y) = E[(S^2/2) exp(-y S^2/2)]`, `y > 0`.
pub fn h_gamma_density(law: MixingLawH, y: f64) -> Result<f64> {
    if y.is_nan() {
        return Err(Error::domain("y", "y > 0", y));
    }
    if y <= 0.0 {
        return Ok(0.0);
    }
    if law.shape.is_degenerate() {
        return Ok(0.5 * exp(-0.5 * y));
    }
    expect_positive_stable(
        law.shape,
        |s| {
            let a = 0.5 * s * s;
            a * exp(-y * a)
        },
        MIX_TOL,
    )
}

/// `2 W_1 V_gamma^2`.
pub fn sample_h_gamma<R: Rng + ?Sized>(law: MixingLawH, rng: &mut R) -> f64 {
    let s = sample_positive_stable_std(law.shape, rng);
    2.0 * exp1(rng) / (s * s)
}

/// Symmetric two-sided `W~_gamma` as a normal scale mixture
/// `X sqrt(2 W_1 V_gamma^2)`, `0 < gamma <= 1`.
pub fn sample_two_sided_via_normal_mixture<R: Rng + ?Sized>(
    gamma: f64,
    rng: &mut R,
) -> Result<f64> {
    let z = sample_h_gamma(MixingLawH::new(gamma)?, rng);
    Ok(std_normal(rng) * sqrt(z))
}

/// `W~_gamma` as a Laplace scale mixture: `Lambda V_gamma` with `Lambda`
/// standard Laplace, `0 < gamma <= 1`.
pub fn sample_two_sided_via_laplace<R: Rng + ?Sized>(gamma: f64, rng: &mut R) -> Result<f64> {
    let v = sample_v_gamma(unit_shape(gamma)?, rng);
    let laplace = sample_two_sided(TwoSidedWeibullLaw::new(1.0)?, rng);
    Ok(laplace * v)
}

/// `W~_gamma = W~_delta V_alpha^(1/delta)`, `alpha = gamma / delta`,
/// `delta > gamma > 0`.
pub fn sample_two_sided_via_two_sided<R: Rng + ?Sized>(
    gamma: f64,
    delta: f64,
    rng: &mut R,
) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::domain("gamma", "gamma > 0", gamma));
    }
    if !(delta > gamma) || !delta.is_finite() {
        return Err(Error::domain("delta", "delta > gamma", delta));
    }
    let v = sample_v_gamma(unit_shape(gamma / delta)?, rng);
    let w = sample_two_sided(TwoSidedWeibullLaw::new(delta)?, rng);
    Ok(w * pow(v, 1.0 / delta))
}

/// `int Phi(x / sqrt y) h_gamma(y) dy` by quadrature against the mixing
/// density. Equals the symmetric two-sided Weibull CDF.
pub fn normal_mixture_cdf(law: MixingLawH, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("x", "finite", x));
    }
    if x == 0.0 {
        return Ok(0.5);
    }
    // H has an algebraic left tail, so the mass below exp(LOG_Y_MIN) is added
    // in closed form; Phi(x / sqrt y) is a step there.
    let head = h_gamma_cdf(law, exp(LOG_Y_MIN))?;
    let mut failure = None;
    let r = integrate_log_scale(
        |y| match h_gamma_density(law, y) {
            Ok(h) => std_normal_cdf(x / sqrt(y)) * h,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        LOG_Y_MIN,
        -LOG_Y_MIN,
        Tolerance::new(1e-10, 1e-9),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let step = if x > 0.0 { head } else { 0.0 };
    Ok(r?.value + step)
}

const LOG_Y_MIN: f64 = -40.0;

/// Analytic exponent `gamma / (2 - gamma)` of the stretched-exponential tail
/// `1 - H_gamma(x) ~ exp(-x^rho / 2)`.
pub fn h_gamma_tail_exponent(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::domain("gamma", "0 < gamma <= 1", gamma));
    }
    Ok(gamma / (2.0 - gamma))
}

/// Analytic tail exponent next to the least-squares slope of
/// `ln(-ln(1 - H(y)))` against `ln y` over the window where
/// `1 - H in [sf_low, sf_high]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailFit {
    pub analytic: f64,
    pub fitted: f64,
    /// `(y, 1 - H(y))` pairs used in the fit.
    pub points: Vec<(f64, f64)>,
}

impl TailFit {
    pub fn relative_error(&self) -> f64 {
        (self.fitted / self.analytic - 1.0).abs()
    }
}

const TAIL_FIT_POINTS: usize = 12;

/// Fits the tail exponent of `H_gamma` over `1 - H in [1e-6, 1e-3]`.
pub fn h_gamma_tail_fit(law: MixingLawH) -> Result<TailFit> {
    h_gamma_tail_fit_window(law, 1e-6, 1e-3)
}

pub fn h_gamma_tail_fit_window(law: MixingLawH, sf_low: f64, sf_high: f64) -> Result<TailFit> {
    let g = law.gamma();
    let analytic = h_gamma_tail_exponent(g)?;
    if !(sf_low > 0.0 && sf_low < sf_high && sf_high < 1.0) {
        return Err(Error::domain("window", "0 < sf_low < sf_high < 1", sf_low));
    }
    let y_high = solve_sf(law, sf_low, analytic)?;
    let y_low = solve_sf(law, sf_high, analytic)?;
    let (ll, lh) = (log(y_low), log(y_high));
    let mut points = Vec::with_capacity(TAIL_FIT_POINTS);
    for i in 0..TAIL_FIT_POINTS {
        let y = exp(ll + (lh - ll) * i as f64 / (TAIL_FIT_POINTS - 1) as f64);
        points.push((y, h_gamma_sf(law, y)?));
    }
    let xs: Vec<f64> = points.iter().map(|&(y, _)| log(y)).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, sf)| log(-log(sf))).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(TailFit {
        analytic,
        fitted: sxy / sxx,
        points,
    })
}

// y with 1 - H(y) = target, by bisection in ln y seeded from the asymptote.
fn solve_sf(law: MixingLawH, target: f64, rho: f64) -> Result<f64> {
    let guess = pow(-2.0 * log(target), 1.0 / rho);
    let (mut lo, mut hi) = (log(guess) - 2.0, log(guess) + 2.0);
    while h_gamma_sf(law, exp(lo))? < target {
        lo -= 2.0;
    }
    while h_gamma_sf(law, exp(hi))? > target {
        hi += 2.0;
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if h_gamma_sf(law, exp(mid))? > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-6 {
            break;
        }
    }
    Ok(exp(0.5 * (lo + hi)))
}

/// Tabulates `H_gamma` against `ln y` on `nodes` points spanning
/// `[y_min, y_max]`. The returned table is indexed by `ln y`.
pub fn h_gamma_log_table(law: MixingLawH, y_min: f64, y_max: f64, nodes: usize) -> Result<TabulatedCdf> {
    if !(y_min > 0.0 && y_max > y_min) {
        return Err(Error::domain("y_min", "0 < y_min < y_max", y_min));
    }
    let (a, b) = (log(y_min), log(y_max));
    let n = nodes.max(2);
    let grid: Vec<f64> = (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect();
    TabulatedCdf::from_fn(&grid, |w| h_gamma_cdf(law, exp(w)))
}
