//! Random sums over triangular arrays.
//!
//! Row `n` holds i.i.d. increments with mean `mu / k` and variance
//! `sigma^2 / k`, so the row sum `S_{n,k}` is close to `N(mu, sigma^2)`. The
//! random index `N = max(1, round(k Z))` with `Z ~ H_gamma` makes `N / k`
//! close to `H_gamma`, and the stopped sum `S_{n,N}` then approaches the
//! asymmetric Weibull law of the second kind with parameters
//! `(mu, sigma, gamma)`.
//!
//! Ensembles are drawn on fixed substreams (see [`crate::stats::ensemble`]),
//! one lane per quantity, so results do not depend on how chunks are
//! scheduled.

use alloc::vec::Vec;

use libm::{log, round, sqrt};
use rand::Rng;

use crate::asymmetric::{asym_laplace_cdf, sample_asym_weibull2, AsymLaplaceLaw, AsymWeibullIILaw};
use crate::mixtures::{h_gamma_cdf, h_gamma_log_table, sample_h_gamma, MixingLawH};
use crate::stats::{
    ensemble, ks_one_sample, ks_two_sample, std_normal, std_normal_cdf, std_normal_pdf,
    uniform_open01, EmpiricalSample,
};
use crate::{Error, Result};

/// Increment law of a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IncrementFamily {
    /// `mu / k +- sigma / sqrt k` with equal probability.
    TwoPoint,
    /// `N(mu / k, sigma^2 / k)`.
    Normal,
    /// Uniform on `mu / k +- sqrt(3) sigma / sqrt k`.
    Uniform,
}

/// How the number of summands is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexLaw {
    /// `N = max(1, round(k Z))`, `Z ~ H_gamma`.
    Rounded,
    /// `N = k`; the sum is then a plain row sum.
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSumScheme {
    k: u64,
    family: IncrementFamily,
    index_law: IndexLaw,
    mixing: MixingLawH,
    mu: f64,
    sigma: f64,
}

impl RandomSumScheme {
    pub fn new(k: u64, family: IncrementFamily, target_gamma: f64, mu: f64, sigma: f64) -> Result<Self> {
        if k < 1 {
            return Err(Error::domain("k", "k >= 1", k as f64));
        }
        if !mu.is_finite() {
            return Err(Error::domain("mu", "finite", mu));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain("sigma", "finite and > 0", sigma));
        }
        Ok(RandomSumScheme {
            k,
            family,
            index_law: IndexLaw::Rounded,
            mixing: MixingLawH::new(target_gamma)?,
            mu,
            sigma,
        })
    }

    pub fn with_index_law(mut self, index_law: IndexLaw) -> Self {
        self.index_law = index_law;
        self
    }

    pub fn with_k(mut self, k: u64) -> Result<Self> {
        if k < 1 {
            return Err(Error::domain("k", "k >= 1", k as f64));
        }
        self.k = k;
        Ok(self)
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn family(&self) -> IncrementFamily {
        self.family
    }

    pub fn index_law(&self) -> IndexLaw {
        self.index_law
    }

    pub fn target_gamma(&self) -> f64 {
        self.mixing.gamma()
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mixing(&self) -> MixingLawH {
        self.mixing
    }

    /// The limit law of the stopped sums.
    pub fn target(&self) -> AsymWeibullIILaw {
        AsymWeibullIILaw::new(self.mu, self.sigma, self.mixing.gamma())
            .expect("scheme parameters are validated")
    }

    fn increment_mean(&self) -> f64 {
        self.mu / self.k as f64
    }

    fn increment_sd(&self) -> f64 {
        self.sigma / sqrt(self.k as f64)
    }
}

/// Sum of `n` independent increments of the scheme's row law.
pub fn sum_of_increments<R: Rng + ?Sized>(scheme: &RandomSumScheme, n: u64, rng: &mut R) -> f64 {
    let m = scheme.increment_mean();
    let s = scheme.increment_sd();
    let nf = n as f64;
    match scheme.family {
        IncrementFamily::TwoPoint => {
            // number of "+" signs among n fair coins, 64 coins per word
            let mut heads = 0u64;
            let mut left = n;
            while left >= 64 {
                heads += u64::from(rng.next_u64().count_ones());
                left -= 64;
            }
            if left > 0 {
                let mask = (1u64 << left) - 1;
                heads += u64::from((rng.next_u64() & mask).count_ones());
            }
            nf * m + s * (2.0 * heads as f64 - nf)
        }
        IncrementFamily::Normal => {
            let mut acc = 0.0;
            for _ in 0..n {
                acc += std_normal(rng);
            }
            nf * m + s * acc
        }
        IncrementFamily::Uniform => {
            let b = sqrt(3.0) * s;
            let mut acc = 0.0;
            for _ in 0..n {
                acc += 2.0 * uniform_open01(rng) - 1.0;
            }
            nf * m + b * acc
        }
    }
}

/// Row sum `S_{n,k}`.
pub fn simulate_row_sum<R: Rng + ?Sized>(scheme: &RandomSumScheme, rng: &mut R) -> f64 {
    sum_of_increments(scheme, scheme.k, rng)
}

/// Number of summands under the scheme's index law.
pub fn random_index<R: Rng + ?Sized>(scheme: &RandomSumScheme, rng: &mut R) -> u64 {
    match scheme.index_law {
        IndexLaw::Constant => scheme.k,
        IndexLaw::Rounded => {
            let z = sample_h_gamma(scheme.mixing, rng);
            let n = round(scheme.k as f64 * z);
            if n < 1.0 {
                1
            } else if n >= u64::MAX as f64 {
                u64::MAX
            } else {
                n as u64
            }
        }
    }
}

/// Stopped sum `S_{n,N}` with an independent random index.
pub fn simulate_random_sum<R: Rng + ?Sized>(scheme: &RandomSumScheme, rng: &mut R) -> f64 {
    let n = random_index(scheme, rng);
    sum_of_increments(scheme, n, rng)
}

/// `k E[X*^2 1(|X*| >= eps)]` for the centred increment `X*`, in closed form
/// for each family.
pub fn lindeberg_fraction(scheme: &RandomSumScheme, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::domain("epsilon", "epsilon > 0", epsilon));
    }
    let s = scheme.increment_sd();
    let sigma2 = scheme.sigma * scheme.sigma;
    Ok(match scheme.family {
        IncrementFamily::TwoPoint => {
            if s >= epsilon {
                sigma2
            } else {
                0.0
            }
        }
        IncrementFamily::Normal => {
            let t = epsilon / s;
            sigma2 * 2.0 * (t * std_normal_pdf(t) + std_normal_cdf(-t))
        }
        IncrementFamily::Uniform => {
            let b = sqrt(3.0) * s;
            if epsilon >= b {
                0.0
            } else {
                scheme.k as f64 * (b * b * b - epsilon * epsilon * epsilon) / (3.0 * b)
            }
        }
    })
}

/// Substream lanes of a convergence study.
pub const LANE_ROWS: u32 = 0;
pub const LANE_INDICES: u32 = 1;
pub const LANE_SUMS: u32 = 2;
pub const LANE_REFERENCE: u32 = 3;

/// Default truncation level of the reported Lindeberg fraction.
pub const LINDEBERG_EPSILON: f64 = 0.1;

/// Raw draws behind a [`ConvergenceReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct StudyEnsembles {
    pub rows: Vec<f64>,
    /// `N / k`.
    pub indices: Vec<f64>,
    pub sums: Vec<f64>,
    /// Direct draws of the limit law.
    pub reference: Vec<f64>,
}

pub fn index_ratio<R: Rng + ?Sized>(scheme: &RandomSumScheme, rng: &mut R) -> f64 {
    random_index(scheme, rng) as f64 / scheme.k as f64
}

/// Draws all four ensembles of a study sequentially.
pub fn study_ensembles(scheme: &RandomSumScheme, n: usize, seed: u64) -> StudyEnsembles {
    let target = scheme.target();
    StudyEnsembles {
        rows: ensemble(seed, LANE_ROWS, n, |r| simulate_row_sum(scheme, r)),
        indices: ensemble(seed, LANE_INDICES, n, |r| index_ratio(scheme, r)),
        sums: ensemble(seed, LANE_SUMS, n, |r| simulate_random_sum(scheme, r)),
        reference: ensemble(seed, LANE_REFERENCE, n, |r| sample_asym_weibull2(target, r)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub k: u64,
    pub ensemble_size: usize,
    /// Row sums against `N(mu, sigma^2)`.
    pub row_ks: f64,
    /// `N / k` against `H_gamma` (the target law for a constant index is a
    /// point mass at 1, so this is against `H_gamma` in either case).
    pub index_ks: f64,
    /// Two-sample statistic of the stopped sums against direct draws of the
    /// limit law.
    pub randsum_ks: f64,
    /// Stopped sums against the closed-form asymmetric Laplace limit, present
    /// when `gamma = 1`.
    pub laplace_ks: Option<f64>,
    /// Stopped sums against `N(mu, sigma^2)`.
    pub normal_ks: f64,
    pub lindeberg_epsilon: f64,
    pub lindeberg_fraction: f64,
}

const INDEX_TABLE_NODES: usize = 256;

/// Computes the report statistics from drawn ensembles.
pub fn summarize_study(
    scheme: &RandomSumScheme,
    ens: StudyEnsembles,
    epsilon: f64,
) -> Result<ConvergenceReport> {
    let n = ens.sums.len();
    let rows = EmpiricalSample::new(ens.rows)?;
    let indices = EmpiricalSample::new(ens.indices)?;
    let sums = EmpiricalSample::new(ens.sums)?;
    let reference = EmpiricalSample::new(ens.reference)?;
    let (mu, sigma) = (scheme.mu, scheme.sigma);
    let normal = |x: f64| std_normal_cdf((x - mu) / sigma);

    let row_ks = ks_one_sample(&rows, normal).statistic;
    let normal_ks = ks_one_sample(&sums, normal).statistic;
    let randsum_ks = ks_two_sample(&sums, &reference).statistic;

    let mixing = scheme.mixing;
    let index_ks = if mixing.stable_shape().is_degenerate() {
        ks_one_sample(&indices, |y| h_gamma_cdf(mixing, y).unwrap_or(f64::NAN)).statistic
    } else {
        let v = indices.values();
        let (lo, hi) = (v[0], v[v.len() - 1]);
        let table = h_gamma_log_table(mixing, lo, hi.max(lo * 1.0001), INDEX_TABLE_NODES)?;
        let logs = indices.map(log)?;
        // the table is exact at its end nodes; outside them H is taken from
        // the quadrature directly
        let (h_lo, h_hi) = (h_gamma_cdf(mixing, lo)?, h_gamma_cdf(mixing, hi)?);
        ks_one_sample(&logs, |w| {
            if w <= log(lo) {
                h_lo
            } else if w >= log(hi) {
                h_hi
            } else {
                table.cdf(w)
            }
        })
        .statistic
    };

    let laplace_ks = if mixing.stable_shape().is_degenerate() {
        let d = sqrt(mu * mu + sigma * sigma);
        // lambda = 1/2: a1 = (D - mu) / sigma^2, a2 = (D + mu) / sigma^2
        let big = d + mu.abs();
        let (small, large) = (sigma * sigma / big, big);
        let (a1, a2) = if mu >= 0.0 {
            (small / (sigma * sigma), large / (sigma * sigma))
        } else {
            (large / (sigma * sigma), small / (sigma * sigma))
        };
        let law = AsymLaplaceLaw::new(a1, a2)?;
        Some(ks_one_sample(&sums, |x| asym_laplace_cdf(law, x)).statistic)
    } else {
        None
    };

    Ok(ConvergenceReport {
        k: scheme.k,
        ensemble_size: n,
        row_ks,
        index_ks,
        randsum_ks,
        laplace_ks,
        normal_ks,
        lindeberg_epsilon: epsilon,
        lindeberg_fraction: lindeberg_fraction(scheme, epsilon)?,
    })
}

/// Minimum ensemble size of a study.
pub const MIN_ENSEMBLE: usize = 1000;

pub fn run_convergence_study(
    scheme: &RandomSumScheme,
    ensemble_size: usize,
    seed: u64,
) -> Result<ConvergenceReport> {
    if ensemble_size < MIN_ENSEMBLE {
        return Err(Error::domain(
            "ensemble_size",
            "ensemble_size >= 1000",
            ensemble_size as f64,
        ));
    }
    summarize_study(
        scheme,
        study_ensembles(scheme, ensemble_size, seed),
        LINDEBERG_EPSILON,
    )
}

/// One study per row size in `ks`, all on the same seed.
pub fn run_sweep(
    scheme: &RandomSumScheme,
    ks: &[u64],
    ensemble_size: usize,
    seed: u64,
) -> Result<Vec<ConvergenceReport>> {
    ks.iter()
        .map(|&k| run_convergence_study(&scheme.with_k(k)?, ensemble_size, seed))
        .collect()
}

/// True when consecutive values never increase by more than `slack`.
pub fn is_nonincreasing_within(values: &[f64], slack: f64) -> bool {
    values.windows(2).all(|w| w[1] <= w[0] + slack)
}
