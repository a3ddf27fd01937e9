//! Registry of identity checks run by `aweibull verify`.
//!
//! Every check draws from its own substreams (`lane` = position in the
//! registry), so a check's result does not depend on which other checks are
//! selected or on the number of worker threads.

use std::f64::consts::PI;

use aweibull_core::asymmetric::{
    asym_laplace_cdf, asym_weibull1_cdf, asym_weibull2_cdf, asym_weibull2_table, nvm_characteristic_function,
    nvm_to_rates, rates_to_nvm, sample_asym_laplace_nvm, sample_asym_weibull1, sample_asym_weibull1_direct,
    sample_asym_weibull2, AsymWeibullIILaw, AsymWeibullILaw, NvmParams,
};
use aweibull_core::mixtures::{
    h_gamma_log_table, h_gamma_tail_fit, normal_mixture_cdf, sample_h_gamma, sample_two_sided_via_laplace,
    sample_two_sided_via_normal_mixture, sample_two_sided_via_two_sided, sample_w1_product,
    sample_w1_product_scaled, sample_weibull_via_halfnormal, sample_weibull_via_mixed_exponential,
    sample_weibull_via_rayleigh, sample_weibull_via_weibull, MixingLawH,
};
use aweibull_core::randsum::{
    simulate_random_sum, IncrementFamily, RandomSumScheme, LANE_REFERENCE, LANE_SUMS,
};
use aweibull_core::stable::{
    expect_positive_stable, moment_positive_stable, moment_symmetric_stable, sample_positive_stable,
    sample_positive_stable_std, sample_symmetric_stable, StableShape, SymmetricStableShape,
};
use aweibull_core::stats::{
    empirical_cf, gamma_fn, ks_one_sample, ks_two_sample, mean_estimate, std_normal_cdf,
    EmpiricalSample, RandomStream, Tolerance,
};
use aweibull_core::weibull::{
    power_transform_identity, sample_weibull, two_sided_cdf, weibull_cdf, weibull_moment, TwoSidedWeibullLaw,
    WeibullLaw,
};
use aweibull_core::Result;

use crate::parallel::par_ensemble;
use crate::report::{Metadata, Report, Value};

pub const DEFAULT_N: usize = 200_000;
pub const DEFAULT_ENSEMBLE: usize = 100_000;
pub const DEFAULT_SEED: u64 = 1;

/// Standard errors allowed for Monte Carlo mean identities.
const Z_LIMIT: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Draws per goodness-of-fit sample.
    pub n: usize,
    /// Replicates per random-sum ensemble.
    pub ensemble: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            n: DEFAULT_N,
            ensemble: DEFAULT_ENSEMBLE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Outcome {
    fn below(statistic: f64, threshold: f64) -> Self {
        Outcome {
            statistic,
            threshold,
            pass: statistic < threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub group: &'static str,
    pub anchor: &'static str,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Error text when the check could not be evaluated.
    pub detail: String,
}

pub struct Check {
    pub name: &'static str,
    pub group: &'static str,
    /// The identity being checked.
    pub anchor: &'static str,
    run: fn(&Ctx) -> Result<Outcome>,
}

struct Ctx {
    seed: u64,
    n: usize,
    ensemble: usize,
    lane: u32,
}

impl Ctx {
    fn draws<F>(&self, sub: u32, n: usize, f: F) -> Result<EmpiricalSample>
    where
        F: Fn(&mut RandomStream) -> f64 + Sync,
    {
        EmpiricalSample::new(par_ensemble(self.seed, self.lane * 16 + sub, n, f))
    }

    fn try_draws<F>(&self, sub: u32, n: usize, f: F) -> Result<EmpiricalSample>
    where
        F: Fn(&mut RandomStream) -> Result<f64> + Sync,
    {
        let v: Result<Vec<f64>> = par_ensemble(self.seed, self.lane * 16 + sub, n, f).into_iter().collect();
        EmpiricalSample::new(v?)
    }

    fn ks<F: FnMut(f64) -> f64>(&self, sample: &EmpiricalSample, cdf: F) -> Outcome {
        let r = ks_one_sample(sample, cdf);
        Outcome::below(r.statistic, r.threshold)
    }

    fn ks2(&self, a: &EmpiricalSample, b: &EmpiricalSample) -> Outcome {
        let r = ks_two_sample(a, b);
        Outcome::below(r.statistic, r.threshold)
    }

    /// Seed for routines that manage their own lanes.
    fn derived_seed(&self) -> u64 {
        (self.seed ^ (u64::from(self.lane) << 32)).wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

fn weibull(g: f64) -> Result<WeibullLaw> {
    WeibullLaw::new(g)
}

fn wcdf(g: f64) -> Result<impl Fn(f64) -> f64> {
    let law = weibull(g)?;
    Ok(move |x| weibull_cdf(law, x))
}

fn tcdf(g: f64) -> Result<impl Fn(f64) -> f64> {
    let law = TwoSidedWeibullLaw::new(g)?;
    Ok(move |x| two_sided_cdf(law, x))
}

fn stable(g: f64) -> Result<StableShape> {
    StableShape::new(g)
}

fn w1_product(c: &Ctx) -> Result<Outcome> {
    let s = c.draws(0, c.n, sample_w1_product)?;
    Ok(c.ks(&s, wcdf(1.0)?))
}

fn w1_product_scaled(c: &Ctx) -> Result<Outcome> {
    let s = c.draws(0, c.n, sample_w1_product_scaled)?;
    Ok(c.ks(&s, |x| if x > 0.0 { -(-(2f64.sqrt()) * x).exp_m1() } else { 0.0 }))
}

fn stable_half_closed_form(c: &Ctx) -> Result<Outcome> {
    let sh = stable(0.5)?;
    let s = c.draws(0, c.n, |r| sample_positive_stable_std(sh, r))?;
    Ok(c.ks(&s, |x| {
        if x > 0.0 {
            2.0 * std_normal_cdf(-1.0 / (2.0 * x).sqrt())
        } else {
            0.0
        }
    }))
}

fn stable_laplace_transform(c: &Ctx) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for (i, &g) in [0.3, 0.5, 0.7, 0.9].iter().enumerate() {
        let sh = stable(g)?;
        let s = par_ensemble(c.seed, c.lane * 16 + i as u32, c.n, |r| sample_positive_stable_std(sh, r));
        for &t in &[0.25, 1.0, 4.0] {
            let e = mean_estimate(s.iter().map(|&x| (-t * x).exp()));
            worst = worst.max(e.z_score((-t.powf(g)).exp()));
        }
    }
    Ok(Outcome::below(worst, Z_LIMIT))
}

fn stable_mixture_cauchy(c: &Ctx) -> Result<Outcome> {
    let sh = SymmetricStableShape::new(1.0)?;
    let s = c.draws(0, c.n, |r| sample_symmetric_stable(sh, r))?;
    Ok(c.ks(&s, |x| 0.5 + x.atan() / PI))
}

fn stable_mixture_cf(c: &Ctx) -> Result<Outcome> {
    let a = 1.5;
    let sh = SymmetricStableShape::new(a)?;
    let s = par_ensemble(c.seed, c.lane * 16, c.n, |r| sample_symmetric_stable(sh, r));
    let mut worst = 0.0f64;
    for &t in &[0.5, 1.0, 2.0] {
        let e = empirical_cf(&s, t);
        worst = worst.max(e.re.z_score((-t.powf(a)).exp())).max(e.im.z_score(0.0));
    }
    Ok(Outcome::below(worst, Z_LIMIT))
}

fn weibull_inversion(c: &Ctx) -> Result<Outcome> {
    let law = weibull(0.5)?;
    let s = c.draws(0, c.n, |r| sample_weibull(law, r))?;
    Ok(c.ks(&s, wcdf(0.5)?))
}

fn power_transform(c: &Ctx) -> Result<Outcome> {
    let law = weibull(2.0)?;
    let s = c.try_draws(0, c.n, |r| power_transform_identity(0.25, 2.0, sample_weibull(law, r)))?;
    Ok(c.ks(&s, wcdf(0.5)?))
}

fn rayleigh_half(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_weibull_via_rayleigh(0.5, r))?;
    Ok(c.ks(&s, wcdf(0.5)?))
}

fn rayleigh_wide(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_weibull_via_rayleigh(1.5, r))?;
    Ok(c.ks(&s, wcdf(1.5)?))
}

fn mixed_exponential(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_weibull_via_mixed_exponential(0.5, r))?;
    Ok(c.ks(&s, wcdf(0.5)?))
}

fn mixed_exponential_survival(_: &Ctx) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for &g in &[0.3, 0.5, 0.8] {
        let sh = stable(g)?;
        for &x in &[0.1, 1.0, 5.0] {
            // P(W > x) = E exp(-x S_{gamma,1} / 2)
            let v = expect_positive_stable(sh, |s| (-x * s).exp(), Tolerance::new(1e-12, 1e-10))?;
            worst = worst.max((v - (-x.powf(g)).exp()).abs());
        }
    }
    Ok(Outcome::below(worst, 1e-8))
}

fn half_normal(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_weibull_via_halfnormal(0.5, r))?;
    Ok(c.ks(&s, wcdf(0.5)?))
}

fn weibull_mixture(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_weibull_via_weibull(0.5, 1.0, r))?;
    Ok(c.ks(&s, wcdf(0.5)?))
}

fn weibull_mixture_wide(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_weibull_via_weibull(0.7, 3.0, r))?;
    Ok(c.ks(&s, wcdf(0.7)?))
}

fn h_sampler(c: &Ctx) -> Result<Outcome> {
    let h = MixingLawH::new(0.5)?;
    let logs = c.draws(0, c.n, |r| sample_h_gamma(h, r).ln())?;
    let v = logs.values();
    let (lo, hi) = (v[0], v[v.len() - 1]);
    let table = h_gamma_log_table(h, lo.exp(), hi.exp(), 200)?;
    Ok(c.ks(&logs, |w| table.cdf(w)))
}

fn h_mean(c: &Ctx) -> Result<Outcome> {
    let g = 0.7;
    let h = MixingLawH::new(g)?;
    let s = par_ensemble(c.seed, c.lane * 16, c.n, |r| sample_h_gamma(h, r));
    let e = mean_estimate(s);
    Ok(Outcome::below(e.z_score(gamma_fn(1.0 + 2.0 / g)?), Z_LIMIT))
}

fn normal_mixture_sampler(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_two_sided_via_normal_mixture(0.5, r))?;
    Ok(c.ks(&s, tcdf(0.5)?))
}

fn normal_mixture_quadrature(_: &Ctx) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for &(g, x) in &[(0.5, 1.0), (0.7, -0.5)] {
        let exact = tcdf(g)?;
        worst = worst.max((normal_mixture_cdf(MixingLawH::new(g)?, x)? - exact(x)).abs());
    }
    Ok(Outcome::below(worst, 1e-6))
}

fn laplace_mixture(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_two_sided_via_laplace(0.5, r))?;
    Ok(c.ks(&s, tcdf(0.5)?))
}

fn two_sided_mixture(c: &Ctx) -> Result<Outcome> {
    let s = c.try_draws(0, c.n, |r| sample_two_sided_via_two_sided(0.5, 1.0, r))?;
    Ok(c.ks(&s, tcdf(0.5)?))
}

fn tail_fit(g: f64) -> Result<Outcome> {
    let fit = h_gamma_tail_fit(MixingLawH::new(g)?)?;
    Ok(Outcome::below(fit.relative_error(), 0.1))
}

fn h_tail_half(_: &Ctx) -> Result<Outcome> {
    tail_fit(0.5)
}

fn h_tail_two_thirds(_: &Ctx) -> Result<Outcome> {
    tail_fit(2.0 / 3.0)
}

fn nvm_ks(c: &Ctx, mu: f64, sigma: f64, lambda: f64) -> Result<Outcome> {
    let p = NvmParams::new(mu, sigma, lambda)?;
    let law = nvm_to_rates(p);
    let s = c.draws(0, c.n, |r| sample_asym_laplace_nvm(p, r))?;
    Ok(c.ks(&s, |x| asym_laplace_cdf(law, x)))
}

fn laplace_variance_mean(c: &Ctx) -> Result<Outcome> {
    nvm_ks(c, 1.0, 1.0, 1.0)
}

fn laplace_variance_mean_skewed(c: &Ctx) -> Result<Outcome> {
    nvm_ks(c, -0.5, 2.0, 0.5)
}

fn laplace_rate_identities(_: &Ctx) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for &mu in &[-3.0, -0.5, 0.0, 1e-6, 1.0, 7.5] {
        for &sigma in &[0.1, 1.0, 2.0] {
            for &lambda in &[0.05, 0.5, 1.0, 4.0] {
                let p = NvmParams::new(mu, sigma, lambda)?;
                let l = nvm_to_rates(p);
                let (a1, a2) = (l.a1(), l.a2());
                let product = (a1 * a2 * sigma * sigma / (2.0 * lambda) - 1.0).abs();
                let m = mu / lambda;
                let mean = (1.0 / a1 - 1.0 / a2 - m).abs() / m.abs().max(1.0);
                let back = nvm_to_rates(rates_to_nvm(l));
                let trip = ((back.a1() - a1) / a1).abs().max(((back.a2() - a2) / a2).abs());
                worst = worst.max(product).max(mean).max(trip);
            }
        }
    }
    Ok(Outcome::below(worst, 1e-12))
}

fn laplace_characteristic_function(c: &Ctx) -> Result<Outcome> {
    let p = NvmParams::new(1.0, 1.0, 1.0)?;
    let s = par_ensemble(c.seed, c.lane * 16, c.n, |r| sample_asym_laplace_nvm(p, r));
    let mut worst = 0.0f64;
    for &t in &[0.3, 1.0, 2.5] {
        let (re, im) = nvm_characteristic_function(p, t);
        let e = empirical_cf(&s, t);
        worst = worst.max(e.re.z_score(re)).max(e.im.z_score(im));
    }
    Ok(Outcome::below(worst, Z_LIMIT))
}

fn first_kind_law() -> Result<AsymWeibullILaw> {
    AsymWeibullILaw::new(0.36603, 1.36603, 0.5)
}

fn asym_first_cdf(c: &Ctx) -> Result<Outcome> {
    let law = first_kind_law()?;
    let s = c.try_draws(0, c.n, |r| sample_asym_weibull1(law, r))?;
    Ok(c.ks(&s, |x| asym_weibull1_cdf(law, x)))
}

fn asym_first_routes(c: &Ctx) -> Result<Outcome> {
    let law = first_kind_law()?;
    let a = c.try_draws(0, c.n, |r| sample_asym_weibull1(law, r))?;
    let b = c.try_draws(1, c.n, |r| sample_asym_weibull1_direct(law, r))?;
    Ok(c.ks2(&a, &b))
}

fn asym_second_cdf(c: &Ctx) -> Result<Outcome> {
    let law = AsymWeibullIILaw::new(1.0, 1.0, 0.5)?;
    let table = asym_weibull2_table(law, 400, 1e-7)?;
    let s = c.draws(0, c.n, |r| sample_asym_weibull2(law, r))?;
    Ok(c.ks(&s, |x| table.cdf(x)))
}

fn asym_second_symmetric(_: &Ctx) -> Result<Outcome> {
    let mut worst = 0.0f64;
    for &g in &[0.5, 0.8] {
        let law = AsymWeibullIILaw::new(0.0, 1.0, g)?;
        let exact = tcdf(g)?;
        for &x in &[-2.0, -0.3, 0.1, 1.0, 4.0] {
            worst = worst.max((asym_weibull2_cdf(law, x)? - exact(x)).abs());
        }
    }
    Ok(Outcome::below(worst, 1e-6))
}

fn moment_check(c: &Ctx, exact: f64, draw: impl Fn(&mut RandomStream) -> f64 + Sync) -> Result<Outcome> {
    let s = par_ensemble(c.seed, c.lane * 16, c.n, draw);
    Ok(Outcome::below(mean_estimate(s).z_score(exact), Z_LIMIT))
}

fn moments_positive_stable(c: &Ctx) -> Result<Outcome> {
    let (sh, beta) = (stable(0.5)?, 0.1);
    moment_check(c, moment_positive_stable(sh, beta)?, |r| sample_positive_stable(sh, r).powf(beta))
}

fn moments_symmetric_stable(c: &Ctx) -> Result<Outcome> {
    let (sh, beta) = (SymmetricStableShape::new(1.0)?, 0.5);
    moment_check(c, moment_symmetric_stable(sh, beta)?, |r| sample_symmetric_stable(sh, r).abs().powf(beta))
}

fn moments_weibull(c: &Ctx) -> Result<Outcome> {
    let law = weibull(0.5)?;
    moment_check(c, weibull_moment(law, 1.0)?, |r| sample_weibull(law, r))
}

// Two-sample statistic of stopped sums against direct limit draws, on the
// same lanes a convergence study uses.
fn randsum_ks(scheme: &RandomSumScheme, n: usize, seed: u64) -> Result<f64> {
    let target = scheme.target();
    let sums = EmpiricalSample::new(par_ensemble(seed, LANE_SUMS, n, |r| simulate_random_sum(scheme, r)))?;
    let reference = EmpiricalSample::new(par_ensemble(seed, LANE_REFERENCE, n, |r| sample_asym_weibull2(target, r)))?;
    Ok(ks_two_sample(&sums, &reference).statistic)
}

fn random_sum_laplace(c: &Ctx) -> Result<Outcome> {
    let scheme = RandomSumScheme::new(400, IncrementFamily::TwoPoint, 1.0, 1.0, 1.0)?;
    // limit at gamma = 1 is asymmetric Laplace with lambda = 1/2
    let law = nvm_to_rates(NvmParams::new(1.0, 1.0, 0.5)?);
    let sums = EmpiricalSample::new(par_ensemble(c.derived_seed(), LANE_SUMS, c.ensemble, |r| {
        simulate_random_sum(&scheme, r)
    }))?;
    Ok(Outcome::below(ks_one_sample(&sums, |x| asym_laplace_cdf(law, x)).statistic, 0.02))
}

fn random_sum_trend(c: &Ctx) -> Result<Outcome> {
    let base = RandomSumScheme::new(25, IncrementFamily::TwoPoint, 0.5, 0.0, 1.0)?;
    let seed = c.derived_seed();
    let ks = [25, 100, 400]
        .iter()
        .map(|&k| randsum_ks(&base.with_k(k)?, c.ensemble, seed))
        .collect::<Result<Vec<f64>>>()?;
    let rise = ks.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    Ok(Outcome::below(rise, 0.005))
}

macro_rules! check {
    ($name:expr, $group:expr, $anchor:expr, $run:expr) => {
        Check {
            name: $name,
            group: $group,
            anchor: $anchor,
            run: $run,
        }
    };
}

/// All checks, in report order. The position of a check is its lane; append
/// new checks at the end so existing results stay reproducible.
pub static REGISTRY: &[Check] = &[
    check!("w1-product", "w1-product", "sqrt(2 W1) |X| ~ W1", w1_product),
    check!("w1-product-scaled", "w1-product", "sqrt(W1) |X| ~ Exp(rate sqrt 2)", w1_product_scaled),
    check!("stable-half-closed-form", "stable", "P(S < x) = 2 Phi(-1/sqrt(2x)) at gamma = 1/2", stable_half_closed_form),
    check!("stable-laplace-transform", "stable", "E exp(-t S) = exp(-t^gamma)", stable_laplace_transform),
    check!("stable-mixture-cauchy", "stable-mixture", "X sqrt(2 S_{1/2}) ~ Cauchy", stable_mixture_cauchy),
    check!("stable-mixture-cf", "stable-mixture", "E exp(it X sqrt(2 S_{alpha/2})) = exp(-|t|^alpha)", stable_mixture_cf),
    check!("weibull-inversion", "weibull", "W1^(1/gamma) ~ W_gamma", weibull_inversion),
    check!("power-transform", "weibull", "W_2^(1/gamma) ~ W_(2 gamma)", power_transform),
    check!("rayleigh-mixture", "rayleigh", "W_gamma ~ W_2 sqrt(V_(gamma/2)), gamma = 0.5", rayleigh_half),
    check!("rayleigh-mixture-wide", "rayleigh", "W_gamma ~ W_2 sqrt(V_(gamma/2)), gamma = 1.5", rayleigh_wide),
    check!("mixed-exponential", "mixed-exponential", "W_gamma ~ W1 V_gamma", mixed_exponential),
    check!("mixed-exponential-survival", "mixed-exponential", "P(W_gamma > x) = E exp(-x S_(gamma,1) / 2)", mixed_exponential_survival),
    check!("half-normal-mixture", "half-normal", "W_gamma ~ |X| sqrt(2 W1 V_gamma^2)", half_normal),
    check!("weibull-mixture", "weibull-mixture", "W_gamma ~ W_delta V_(gamma/delta)^(1/delta), delta = 2 gamma", weibull_mixture),
    check!("weibull-mixture-wide", "weibull-mixture", "W_gamma ~ W_delta V_(gamma/delta)^(1/delta), gamma = 0.7, delta = 3", weibull_mixture_wide),
    check!("h-mixing-sampler", "h-mixing", "2 W1 V_gamma^2 ~ H_gamma", h_sampler),
    check!("h-mixing-mean", "h-mixing", "E Z = Gamma(1 + 2/gamma) for Z ~ H_gamma", h_mean),
    check!("normal-mixture-sampler", "normal-mixture", "X sqrt(Z) ~ two-sided W_gamma, Z ~ H_gamma", normal_mixture_sampler),
    check!("normal-mixture-cdf", "normal-mixture", "int Phi(x / sqrt y) dH_gamma(y) = two-sided W_gamma CDF", normal_mixture_quadrature),
    check!("laplace-mixture", "laplace-mixture", "two-sided W_gamma ~ Laplace * V_gamma", laplace_mixture),
    check!("two-sided-mixture", "two-sided-mixture", "two-sided W_gamma ~ two-sided W_delta V_(gamma/delta)^(1/delta)", two_sided_mixture),
    check!("h-tail-exponent-half", "h-tail", "ln(-ln(1 - H_gamma(y))) ~ gamma/(2 - gamma) ln y, gamma = 1/2", h_tail_half),
    check!("h-tail-exponent-two-thirds", "h-tail", "ln(-ln(1 - H_gamma(y))) ~ gamma/(2 - gamma) ln y, gamma = 2/3", h_tail_two_thirds),
    check!("laplace-variance-mean", "laplace-variance-mean", "sigma/sqrt(lambda) X sqrt(W1) + mu W1/lambda ~ asymmetric Laplace, (1, 1, 1)", laplace_variance_mean),
    check!("laplace-variance-mean-skewed", "laplace-variance-mean", "sigma/sqrt(lambda) X sqrt(W1) + mu W1/lambda ~ asymmetric Laplace, (-0.5, 2, 0.5)", laplace_variance_mean_skewed),
    check!("laplace-rate-identities", "laplace-variance-mean", "a1 a2 sigma^2 = 2 lambda, 1/a1 - 1/a2 = mu/lambda", laplace_rate_identities),
    check!("laplace-characteristic-function", "laplace-variance-mean", "E exp(itY) = lambda / (lambda - i mu t + sigma^2 t^2 / 2)", laplace_characteristic_function),
    check!("asym-first-cdf", "asym-first", "variance-mean mixture times V_gamma ~ first-kind asymmetric Weibull", asym_first_cdf),
    check!("asym-first-routes", "asym-first", "mixture route ~ sign-branch route for the first-kind law", asym_first_routes),
    check!("asym-second-cdf", "asym-second", "mu Z + sigma sqrt(Z) X ~ second-kind law, Z ~ H_gamma", asym_second_cdf),
    check!("asym-second-symmetric", "asym-second", "second-kind law with mu = 0 is two-sided W_gamma", asym_second_symmetric),
    check!("moments-positive-stable", "moments", "E S_(gamma,1)^beta = 2^beta Gamma(1 - beta/gamma) / Gamma(1 - beta)", moments_positive_stable),
    check!("moments-symmetric-stable", "moments", "E |S_(alpha,0)|^beta = 2^beta Gamma((beta+1)/2) Gamma(1 - beta/alpha) / (sqrt(pi) Gamma(1 - beta/2))", moments_symmetric_stable),
    check!("moments-weibull", "moments", "E W_gamma^delta = Gamma(1 + delta/gamma)", moments_weibull),
    check!("random-sum-laplace", "random-sum", "stopped two-point sums -> asymmetric Laplace at gamma = 1, k = 400", random_sum_laplace),
    check!("random-sum-trend", "random-sum", "stopped-sum KS nonincreasing over k = 25, 100, 400 at gamma = 1/2", random_sum_trend),
];

/// Checks whose name or group is in `only`; all checks when `only` is empty.
/// Unknown selectors are an error.
pub fn select(only: &[String]) -> std::result::Result<Vec<(u32, &'static Check)>, String> {
    for sel in only {
        if !REGISTRY.iter().any(|c| c.name == sel || c.group == sel) {
            return Err(format!("no check or group named {sel:?}"));
        }
    }
    Ok(REGISTRY
        .iter()
        .enumerate()
        .filter(|(_, c)| only.is_empty() || only.iter().any(|s| c.name == s || c.group == s))
        .map(|(i, c)| (i as u32, c))
        .collect())
}

pub fn run_check(config: &VerifyConfig, lane: u32, check: &Check) -> CheckRecord {
    let ctx = Ctx {
        seed: config.seed,
        n: config.n,
        ensemble: config.ensemble,
        lane,
    };
    let (outcome, detail) = match (check.run)(&ctx) {
        Ok(o) => (o, String::new()),
        Err(e) => (
            Outcome {
                statistic: f64::NAN,
                threshold: f64::NAN,
                pass: false,
            },
            e.to_string(),
        ),
    };
    CheckRecord {
        name: check.name,
        group: check.group,
        anchor: check.anchor,
        statistic: outcome.statistic,
        threshold: outcome.threshold,
        pass: outcome.pass,
        detail,
    }
}

pub fn run(config: &VerifyConfig, only: &[String]) -> std::result::Result<Vec<CheckRecord>, String> {
    Ok(select(only)?
        .into_iter()
        .map(|(lane, c)| run_check(config, lane, c))
        .collect())
}

pub const COLUMNS: [&str; 7] = ["name", "group", "anchor", "statistic", "threshold", "pass", "detail"];

pub fn to_report(config: &VerifyConfig, records: &[CheckRecord]) -> Report {
    let params = format!("n={},ensemble={}", config.n, config.ensemble);
    let mut r = Report::new(Metadata::new("verify", "all", params, config.seed), &COLUMNS);
    for c in records {
        r.push(vec![
            c.name.into(),
            c.group.into(),
            c.anchor.into(),
            Value::Float(c.statistic),
            Value::Float(c.threshold),
            c.pass.into(),
            c.detail.clone().into(),
        ]);
    }
    r
}
