//! Globally adaptive Gauss-Kronrod (10/21) quadrature.
//!
//! The error estimate follows the QUADPACK rescaling of `|K21 - G10|`, which
//! is conservative on smooth integrands. Semi-infinite ranges are mapped onto
//! `(0, 1)` with `x = a + t / (1 - t)`.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use libm::{ceil, exp, fabs, pow};

use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_36,
    0.295_524_224_714_752_87,
];

/// Stopping rule: converged once `error <= max(abs, rel * |value|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    fn bound(&self, value: f64) -> f64 {
        self.abs.max(self.rel * fabs(value))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

const MAX_PANELS: usize = 4000;

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut gauss = 0.0;
    let mut kronrod = f_center * WGK[10];
    let mut res_abs = fabs(kronrod);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (fabs(f1) + fabs(f2));
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * fabs(f_center - mean);
    for j in 0..10 {
        res_asc += WGK[j] * (fabs(fv1[j] - mean) + fabs(fv2[j] - mean));
    }
    let value = kronrod * half;
    res_abs *= fabs(half);
    res_asc *= fabs(half);
    let mut error = fabs((kronrod - gauss) * half);
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * pow(200.0 * error / res_asc, 1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the panels
/// delimited by `points` and bisecting the worst panel until the total error
/// meets `tol`.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<Integral> {
    debug_assert!(points.len() >= 2);
    let mut heap = BinaryHeap::with_capacity(64);
    for w in points.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(&mut f, w[0], w[1]));
        }
    }
    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NumericFailure {
                what: "adaptive quadrature (non-finite integrand)",
                estimate: value,
                residual: error,
                fallback: None,
            });
        }
        if error <= tol.bound(value) {
            return Ok(Integral { value, error });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Ok(Integral { value, error }),
        };
        let mid = 0.5 * (worst.a + worst.b);
        if heap.len() >= MAX_PANELS || mid <= worst.a || mid >= worst.b {
            return Err(Error::NumericFailure {
                what: "adaptive quadrature",
                estimate: value,
                residual: error,
                fallback: None,
            });
        }
        heap.push(gk21(&mut f, worst.a, mid));
        heap.push(gk21(&mut f, mid, worst.b));
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn adaptive_quadrature<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    if a > b {
        let r = integrate_with_breaks(f, &[b, a], tol)?;
        return Ok(Integral {
            value: -r.value,
            error: r.error,
        });
    }
    integrate_with_breaks(f, &[a, b], tol)
}

/// Integrates `f` over `[a, +inf)` via `x = a + t / (1 - t)`.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    tol: Tolerance,
) -> Result<Integral> {
    let g = |t: f64| {
        let s = 1.0 - t;
        let v = f(a + t / s);
        if v == 0.0 {
            0.0
        } else {
            v / (s * s)
        }
    };
    integrate_with_breaks(g, &[0.0, 0.5, 1.0], tol)
}

/// Integrates a nonnegative (or sign-stable) `f` over
/// `(exp(log_lo), exp(log_hi))` in the variable `w = ln x`.
///
/// The integrand `f(e^w) e^w` is scanned on a coarse grid first; the range
/// is trimmed to where it exceeds `1e-20` of its peak and split at the peak,
/// so narrow bumps far from the origin are never missed by the first rule.
pub fn integrate_log_scale<F: FnMut(f64) -> f64>(
    mut f: F,
    log_lo: f64,
    log_hi: f64,
    tol: Tolerance,
) -> Result<Integral> {
    const STEP: f64 = 0.5;
    let mut g = |w: f64| {
        let x = exp(w);
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v * x
        }
    };
    let steps = ceil((log_hi - log_lo) / STEP) as usize;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| (log_lo + i as f64 * STEP).min(log_hi))
        .collect();
    let vals: Vec<f64> = grid.iter().map(|&w| fabs(g(w))).collect();
    let (peak_idx, peak) = vals
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    if peak == 0.0 {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    if !peak.is_finite() {
        return Err(Error::NumericFailure {
            what: "log-scale quadrature (non-finite integrand)",
            estimate: peak,
            residual: f64::INFINITY,
            fallback: None,
        });
    }
    let cut = peak * 1e-20;
    let first = vals.iter().position(|&v| v > cut).unwrap_or(0);
    let last = vals.iter().rposition(|&v| v > cut).unwrap_or(grid.len() - 1);
    let lo = grid[first.saturating_sub(1)];
    let hi = grid[(last + 1).min(grid.len() - 1)];
    let mid = grid[peak_idx];
    let mut pts: Vec<f64> = Vec::with_capacity(3);
    pts.push(lo);
    if mid > lo && mid < hi {
        pts.push(mid);
    }
    pts.push(hi);
    integrate_with_breaks(g, &pts, tol)
}
