use libm::{cos, sin, sqrt};

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

impl MeanEstimate {
    /// `|mean - target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        if self.std_error == 0.0 {
            if self.mean == target {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - target).abs() / self.std_error
        }
    }

    pub fn within(&self, target: f64, k: f64) -> bool {
        self.z_score(target) <= k
    }

    /// Half-width of a normal-approximation interval with `k` standard errors.
    pub fn half_width(&self, k: f64) -> f64 {
        k * self.std_error
    }
}

/// Mean and standard error of `values`, accumulated with Welford's update.
pub fn mean_estimate<I: IntoIterator<Item = f64>>(values: I) -> MeanEstimate {
    let mut n = 0usize;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for x in values {
        n += 1;
        let d = x - mean;
        mean += d / n as f64;
        m2 += d * (x - mean);
    }
    let std_error = if n > 1 {
        sqrt(m2 / ((n - 1) as f64) / n as f64)
    } else {
        0.0
    };
    MeanEstimate { mean, std_error, n }
}

/// Empirical characteristic function at `t`, split into real and imaginary
/// parts with separate standard errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexEstimate {
    pub re: MeanEstimate,
    pub im: MeanEstimate,
}

impl ComplexEstimate {
    /// Both parts within `k` standard errors of `(re, im)`.
    pub fn within(&self, re: f64, im: f64, k: f64) -> bool {
        self.re.within(re, k) && self.im.within(im, k)
    }
}

pub fn empirical_cf(values: &[f64], t: f64) -> ComplexEstimate {
    ComplexEstimate {
        re: mean_estimate(values.iter().map(|&x| cos(t * x))),
        im: mean_estimate(values.iter().map(|&x| sin(t * x))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welford_matches_textbook() {
        let e = mean_estimate([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.n, 4);
        assert!((e.mean - 2.5).abs() < 1e-15);
        // sample variance 5/3, se = sqrt(5/12)
        assert!((e.std_error - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
        assert!(e.within(2.5, 0.0));
    }

    #[test]
    fn constant_sample_has_zero_error() {
        let e = mean_estimate([7.0; 10]);
        assert_eq!(e.std_error, 0.0);
        assert_eq!(e.z_score(7.0), 0.0);
        assert!(e.z_score(7.1).is_infinite());
    }
}
