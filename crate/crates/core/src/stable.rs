//! One-sided and symmetric strictly stable laws.
//!
//! Two conventions meet here. Internally every routine works with the
//! *standard* positive stable variable `S` whose Laplace transform is
//! `E exp(-s S) = exp(-s^gamma)`. The mixture identities are written in terms
//! of `S_{gamma,1} = 2 S` (Laplace transform `exp(-(2s)^gamma)`) and of
//! `V_gamma = 2 / S_{gamma,1} = 1 / S`. The factor 2 is applied only at the
//! boundary: [`sample_positive_stable`] and [`moment_positive_stable`] use
//! the `S_{gamma,1}` convention, everything suffixed `_std` uses `S`.
//!
//! Sampling uses Kanter's exact representation
//! `S = (A(pi U) / E)^((1 - gamma) / gamma)` with
//! `A(u) = sin((1-g)u) sin(gu)^(g/(1-g)) / sin(u)^(1/(1-g))`.
//! The same representation gives the distribution function as a single
//! integral, `P(S <= x) = (1/pi) int_0^pi exp(-A(u) x^(-g/(1-g))) du`, whose
//! derivative is the density.

use core::cell::Cell;
use core::f64::consts::PI;

use libm::{exp, log, pow, sin, sqrt};
use rand::Rng;

use crate::stats::quadrature::{adaptive_quadrature, integrate_log_scale};
use crate::stats::{exp1, gamma_fn, std_normal, uniform_open01, Tolerance};
use crate::{Error, Result};

/// Exponent `gamma` of a one-sided strictly stable law, `0 < gamma <= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StableShape {
    gamma: f64,
}

impl StableShape {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma <= 1.0 {
            Ok(StableShape { gamma })
        } else {
            Err(Error::domain("gamma", "0 < gamma <= 1", gamma))
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `gamma == 1`: the law is a point mass at 1.
    pub fn is_degenerate(&self) -> bool {
        self.gamma == 1.0
    }

    /// `ln A(u)` for `u` in `(0, pi)`, `gamma < 1`.
    fn ln_kanter(&self, u: f64) -> f64 {
        let g = self.gamma;
        let q = g / (1.0 - g);
        log(sin((1.0 - g) * u)) + q * log(sin(g * u)) - (1.0 + q) * log(sin_near_pi(u))
    }
}

/// Characteristic exponent `alpha` of a symmetric strictly stable law with
/// characteristic function `exp(-|t|^alpha)`, `0 < alpha <= 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricStableShape {
    alpha: f64,
}

impl SymmetricStableShape {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 2.0 {
            Ok(SymmetricStableShape { alpha })
        } else {
            Err(Error::domain("alpha", "0 < alpha <= 2", alpha))
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Shape of the one-sided mixing law, exponent `alpha / 2`.
    pub fn mixing_shape(&self) -> StableShape {
        StableShape {
            gamma: 0.5 * self.alpha,
        }
    }
}

// sin(u) for u in (0, pi) without losing digits next to pi.
fn sin_near_pi(u: f64) -> f64 {
    if u > 0.5 * PI {
        sin(PI - u)
    } else {
        sin(u)
    }
}

/// One draw of the standard positive stable `S`, `E exp(-sS) = exp(-s^gamma)`.
/// Returns exactly `1.0` when `gamma == 1`.
pub fn sample_positive_stable_std<R: Rng + ?Sized>(shape: StableShape, rng: &mut R) -> f64 {
    if shape.is_degenerate() {
        return 1.0;
    }
    let g = shape.gamma;
    let u = PI * uniform_open01(rng);
    let e = exp1(rng);
    // (A/E)^((1-g)/g) assembled in logs; the exponents blow up as g -> 1
    let r = (1.0 - g) / g;
    exp(r * log(sin((1.0 - g) * u)) + log(sin(g * u)) - log(sin_near_pi(u)) / g - r * log(e))
}

/// One draw of `S_{gamma,1} = 2 S`.
pub fn sample_positive_stable<R: Rng + ?Sized>(shape: StableShape, rng: &mut R) -> f64 {
    2.0 * sample_positive_stable_std(shape, rng)
}

/// One draw of `V_gamma = 2 / S_{gamma,1} = 1 / S`. Consumes the stream
/// exactly like [`sample_positive_stable_std`], so paired streams give
/// reciprocal draws.
pub fn sample_v_gamma<R: Rng + ?Sized>(shape: StableShape, rng: &mut R) -> f64 {
    1.0 / sample_positive_stable_std(shape, rng)
}

const DENSITY_TOL: Tolerance = Tolerance::new(0.0, 1e-11);

/// Density of `S` at `x > 0`, `0 < gamma < 1`.
///
/// Evaluated as `(q / (pi x)) int_0^pi (A c) exp(-A c) du` with
/// `q = gamma / (1 - gamma)` and `c = x^-q`; the integrand is bounded by
/// `1/e`, so there is no overflow at either end of the range.
pub fn density_positive_stable(shape: StableShape, x: f64) -> Result<f64> {
    if shape.is_degenerate() {
        return Err(Error::Degenerate("stable density"));
    }
    if x.is_nan() {
        return Err(Error::domain("x", "x > 0", x));
    }
    if x <= 0.0 || x.is_infinite() {
        return Ok(0.0);
    }
    let g = shape.gamma;
    let q = g / (1.0 - g);
    let ln_c = -q * log(x);
    let r = adaptive_quadrature(
        |u| {
            let ac = exp(shape.ln_kanter(u) + ln_c);
            if ac.is_infinite() {
                0.0
            } else {
                ac * exp(-ac)
            }
        },
        0.0,
        PI,
        DENSITY_TOL,
    )?;
    Ok(q / (PI * x) * r.value)
}

/// Distribution function of `S` at `x`.
pub fn cdf_positive_stable(shape: StableShape, x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("x", "not NaN", x));
    }
    if shape.is_degenerate() {
        return Ok(if x >= 1.0 { 1.0 } else { 0.0 });
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let g = shape.gamma;
    let ln_c = -g / (1.0 - g) * log(x);
    let r = adaptive_quadrature(
        |u| exp(-exp(shape.ln_kanter(u) + ln_c)),
        0.0,
        PI,
        Tolerance::new(1e-14, 1e-11),
    )?;
    Ok((r.value / PI).clamp(0.0, 1.0))
}

/// `E phi(S)` for a nonnegative, integrable `phi`, computed as the double
/// integral over Kanter's representation
/// `(1/pi) int_0^pi int_0^inf e^-t phi((A(u)/t)^((1-g)/g)) dt du`.
///
/// The inner integral runs on a log scale in `t` so that mass deep in either
/// tail of `S` is located before refinement.
pub fn expect_positive_stable<F>(shape: StableShape, mut phi: F, tol: Tolerance) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if shape.is_degenerate() {
        return Ok(phi(1.0));
    }
    let g = shape.gamma;
    let r = (1.0 - g) / g;
    let inner_tol = Tolerance::new(tol.abs * 1e-3, tol.rel * 1e-2);
    let failure: Cell<Option<Error>> = Cell::new(None);
    let outer = adaptive_quadrature(
        |u| {
            let ln_a = shape.ln_kanter(u);
            let inner = integrate_log_scale(
                |t| {
                    let s = exp(r * (ln_a - log(t)));
                    let w = exp(-t);
                    if w == 0.0 {
                        0.0
                    } else {
                        w * phi(s)
                    }
                },
                -60.0,
                6.7,
                inner_tol,
            );
            match inner {
                Ok(v) => v.value,
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            }
        },
        0.0,
        PI,
        Tolerance::new(tol.abs * PI, tol.rel),
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(outer?.value / PI)
}

/// One draw with characteristic function `exp(-|t|^alpha)`, built as
/// `X sqrt(2 S)` with `S` standard positive stable of exponent `alpha / 2`.
pub fn sample_symmetric_stable<R: Rng + ?Sized>(shape: SymmetricStableShape, rng: &mut R) -> f64 {
    let s = sample_positive_stable_std(shape.mixing_shape(), rng);
    std_normal(rng) * sqrt(2.0 * s)
}

/// `E S_{gamma,1}^beta = 2^beta Gamma(1 - beta/gamma) / Gamma(1 - beta)` for
/// `0 < beta < gamma`.
pub fn moment_positive_stable(shape: StableShape, beta: f64) -> Result<f64> {
    let g = shape.gamma;
    if !(beta > 0.0 && beta < g) {
        return Err(Error::domain("beta", "0 < beta < gamma", beta));
    }
    Ok(pow(2.0, beta) * gamma_fn(1.0 - beta / g)? / gamma_fn(1.0 - beta)?)
}

/// `E |S_{alpha,0}|^beta` for `0 < beta < alpha <= 2`:
/// `(2^beta / sqrt(pi)) Gamma((beta+1)/2) Gamma(1 - beta/alpha) / Gamma(1 - beta/2)`.
///
/// Follows from `S_{alpha,0} = X sqrt(S_{alpha/2,1})`, the half-normal
/// moment `E|X|^beta = 2^(beta/2) Gamma((beta+1)/2) / sqrt(pi)` and
/// [`moment_positive_stable`] at `beta/2`. At `alpha = 2`, `beta = 1` it
/// reduces to `E|X sqrt 2| = 2/sqrt(pi)`.
pub fn moment_symmetric_stable(shape: SymmetricStableShape, beta: f64) -> Result<f64> {
    let a = shape.alpha;
    if !(beta > 0.0 && beta < a) {
        return Err(Error::domain("beta", "0 < beta < alpha", beta));
    }
    Ok(pow(2.0, beta) / sqrt(PI) * gamma_fn(0.5 * (beta + 1.0))? * gamma_fn(1.0 - beta / a)?
        / gamma_fn(1.0 - 0.5 * beta)?)
}
