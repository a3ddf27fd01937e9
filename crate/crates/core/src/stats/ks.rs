use alloc::vec::Vec;

use libm::sqrt;

use crate::{Error, Result};

/// Asymptotic 95% point of the Kolmogorov distribution.
pub const KS_SCALE: f64 = 1.36;
/// Multiplier on [`KS_SCALE`] so a suite of identity checks rarely fails by
/// chance (per-check false alarm well under `1e-3`).
pub const KS_SAFETY: f64 = 1.5;

pub fn one_sample_threshold(n: usize) -> f64 {
    KS_SAFETY * KS_SCALE / sqrt(n as f64)
}

pub fn two_sample_threshold(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    KS_SAFETY * KS_SCALE * sqrt((n + m) / (n * m))
}

/// A sorted, finite, nonempty sample.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalSample {
    values: Vec<f64>,
}

impl EmpiricalSample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(EmpiricalSample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Fraction of the sample strictly below `x`.
    pub fn cdf_below(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v < x) as f64 / self.values.len() as f64
    }

    /// Fraction of the sample at or below `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }

    pub fn map<F: FnMut(f64) -> f64>(&self, f: F) -> Result<EmpiricalSample> {
        EmpiricalSample::new(self.values.iter().copied().map(f).collect())
    }
}

/// Outcome of a Kolmogorov-Smirnov comparison. `m == 0` marks a one-sample
/// test. `pass` always equals `statistic < threshold`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KsReport {
    pub statistic: f64,
    pub n: usize,
    pub m: usize,
    pub threshold: f64,
    pub pass: bool,
}

impl KsReport {
    pub fn new(statistic: f64, n: usize, m: usize, threshold: f64) -> Self {
        KsReport {
            statistic,
            n,
            m,
            threshold,
            pass: statistic < threshold,
        }
    }

    /// Re-judges the statistic against a different threshold.
    pub fn with_threshold(self, threshold: f64) -> Self {
        KsReport::new(self.statistic, self.n, self.m, threshold)
    }
}

/// One-sample KS distance between `sample` and a continuous CDF.
pub fn ks_one_sample<F: FnMut(f64) -> f64>(sample: &EmpiricalSample, mut cdf: F) -> KsReport {
    let n = sample.len();
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in sample.values.iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / nf - f;
        let below = f - i as f64 / nf;
        d = d.max(above).max(below);
    }
    KsReport::new(d.clamp(0.0, 1.0), n, 0, one_sample_threshold(n))
}

/// Two-sample KS distance (exact supremum, ties handled).
pub fn ks_two_sample(a: &EmpiricalSample, b: &EmpiricalSample) -> KsReport {
    let (xa, xb) = (a.values(), b.values());
    let (n, m) = (xa.len(), xb.len());
    let (nf, mf) = (n as f64, m as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        let x = xa[i].min(xb[j]);
        while i < n && xa[i] <= x {
            i += 1;
        }
        while j < m && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / nf - j as f64 / mf).abs());
    }
    KsReport::new(d, n, m, two_sample_threshold(n, m))
}
