use alloc::vec::Vec;

use crate::{Error, Result};

/// A distribution function known at grid nodes and interpolated linearly in
/// between. Used where the exact CDF is an expensive nested quadrature and
/// must be queried at many points (KS tests, quantile resampling).
///
/// Values are forced nondecreasing; outside the grid the CDF is clamped to
/// the end values.
#[derive(Clone, Debug, PartialEq)]
pub struct TabulatedCdf {
    xs: Vec<f64>,
    ps: Vec<f64>,
}

impl TabulatedCdf {
    /// Evaluates `cdf` at every grid node (which must be strictly increasing).
    pub fn from_fn<F>(grid: &[f64], mut cdf: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if grid.len() < 2 {
            return Err(Error::domain("grid", "at least 2 nodes", grid.len() as f64));
        }
        let mut ps = Vec::with_capacity(grid.len());
        let mut running = 0.0f64;
        for &x in grid {
            running = running.max(cdf(x)?.clamp(0.0, 1.0));
            ps.push(running);
        }
        Ok(TabulatedCdf {
            xs: grid.to_vec(),
            ps,
        })
    }

    pub fn nodes(&self) -> (&[f64], &[f64]) {
        (&self.xs, &self.ps)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let k = self.xs.partition_point(|&v| v <= x);
        if k == 0 {
            return self.ps[0];
        }
        if k == self.xs.len() {
            return self.ps[k - 1];
        }
        let (x0, x1) = (self.xs[k - 1], self.xs[k]);
        let (p0, p1) = (self.ps[k - 1], self.ps[k]);
        p0 + (p1 - p0) * (x - x0) / (x1 - x0)
    }

    /// Inverse of the interpolant, clamped to the grid range.
    pub fn quantile(&self, p: f64) -> f64 {
        let k = self.ps.partition_point(|&v| v < p);
        if k == 0 {
            return self.xs[0];
        }
        if k == self.ps.len() {
            return self.xs[k - 1];
        }
        let (x0, x1) = (self.xs[k - 1], self.xs[k]);
        let (p0, p1) = (self.ps[k - 1], self.ps[k]);
        if p1 == p0 {
            x0
        } else {
            x0 + (x1 - x0) * (p - p0) / (p1 - p0)
        }
    }
}
