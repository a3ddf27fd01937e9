use aweibull_core::asymmetric::{
    asym_laplace_cdf, asym_weibull1_cdf, asym_weibull1_pdf, asym_weibull1_quantile, nvm_to_rates, rates_to_nvm,
    solve_vw, AsymLaplaceLaw, AsymWeibullILaw, NvmParams,
};
use aweibull_core::mixtures::{h_gamma_cdf, MixingLawH};
use aweibull_core::stable::{moment_positive_stable, StableShape};
use aweibull_core::stats::{
    ensemble, ks_one_sample, ks_two_sample, EmpiricalSample, RandomStream, ENSEMBLE_CHUNK,
};
use aweibull_core::weibull::{
    power_transform_identity, two_sided_cdf, two_sided_quantile, weibull_cdf, weibull_moment, weibull_pdf,
    weibull_quantile, TwoSidedWeibullLaw, WeibullLaw,
};
use proptest::prelude::*;
use rand::Rng;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn moment_duality(g in 0.05f64..=1.0, frac in 0.01f64..0.99) {
        let beta = frac * g;
        let m = moment_positive_stable(StableShape::new(g).unwrap(), beta).unwrap();
        let lhs = m * libm::tgamma(1.0 - beta) / 2f64.powf(beta);
        let w = weibull_moment(WeibullLaw::new(g).unwrap(), -beta).unwrap();
        prop_assert!(close(lhs, w, 1e-12), "{lhs} vs {w}");
    }

    #[test]
    fn weibull_quantile_round_trip(g in 0.1f64..5.0, p in 0.001f64..0.999) {
        let law = WeibullLaw::new(g).unwrap();
        let x = weibull_quantile(law, p).unwrap();
        prop_assert!((weibull_cdf(law, x) - p).abs() < 1e-12);
    }

    #[test]
    fn weibull_pdf_is_cdf_derivative(g in prop::sample::select(vec![0.5, 1.0, 2.0]), x in 0.05f64..4.0) {
        let law = WeibullLaw::new(g).unwrap();
        let h = 1e-5;
        let d = (weibull_cdf(law, x + h) - weibull_cdf(law, x - h)) / (2.0 * h);
        prop_assert!((d - weibull_pdf(law, x)).abs() < 1e-6);
    }

    #[test]
    fn two_sided_is_symmetric(g in 0.1f64..5.0, x in 0.0f64..20.0) {
        let law = TwoSidedWeibullLaw::new(g).unwrap();
        prop_assert!((two_sided_cdf(law, x) + two_sided_cdf(law, -x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_sided_quantile_round_trip(g in 0.1f64..5.0, p in 0.001f64..0.999) {
        let law = TwoSidedWeibullLaw::new(g).unwrap();
        let x = two_sided_quantile(law, p).unwrap();
        prop_assert!((two_sided_cdf(law, x) - p).abs() < 1e-12);
    }

    #[test]
    fn power_transform_composes(g in 0.1f64..3.0, gp in 0.1f64..3.0, w in 0.0f64..50.0) {
        // P(W^(1/g) <= x) under W_{gp} equals the W_{g gp} CDF at x
        let x = power_transform_identity(g, gp, w).unwrap();
        let a = weibull_cdf(WeibullLaw::new(gp).unwrap(), w);
        let b = weibull_cdf(WeibullLaw::new(g * gp).unwrap(), x);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn rate_identities(mu in -50.0f64..50.0, sigma in 0.01f64..20.0, lambda in 0.01f64..20.0) {
        let p = NvmParams::new(mu, sigma, lambda).unwrap();
        let law = nvm_to_rates(p);
        let (a1, a2) = (law.a1(), law.a2());
        prop_assert!(a1 > 0.0 && a2 > 0.0);
        prop_assert!(close(a1 * a2 * sigma * sigma / (2.0 * lambda), 1.0, 1e-12));
        // 1/a1 - 1/a2 is a difference of nearby numbers when mu is small
        prop_assert!((1.0 / a1 - 1.0 / a2 - mu / lambda).abs() <= 1e-12 * (1.0 / a1 + 1.0 / a2));
        let (v, w) = solve_vw(p);
        prop_assert!(v > 0.0 && w > 0.0);
        prop_assert!(close(1.0 / w, a1, 1e-12) && close(1.0 / v, a2, 1e-12));
    }

    #[test]
    fn rates_round_trip(a1 in 0.01f64..50.0, a2 in 0.01f64..50.0) {
        let law = AsymLaplaceLaw::new(a1, a2).unwrap();
        let back = nvm_to_rates(rates_to_nvm(law));
        prop_assert!(close(back.a1(), a1, 1e-12) && close(back.a2(), a2, 1e-12));
    }

    #[test]
    fn first_kind_cdf_is_a_distribution(a1 in 0.05f64..20.0, a2 in 0.05f64..20.0, g in 0.05f64..=1.0,
                                        x in -30.0f64..30.0, dx in 0.0f64..5.0) {
        let law = AsymWeibullILaw::new(a1, a2, g).unwrap();
        let (f, f2) = (asym_weibull1_cdf(law, x), asym_weibull1_cdf(law, x + dx));
        prop_assert!((0.0..=1.0).contains(&f) && f <= f2);
        prop_assert!(asym_weibull1_pdf(law, x) >= 0.0);
        // branches meet at zero, where the left mass is a1 / (a1 + a2)
        let at0 = a1 / (a1 + a2);
        prop_assert!((asym_weibull1_cdf(law, 1e-300) - at0).abs() < 1e-12);
        prop_assert!((asym_weibull1_cdf(law, -1e-300) - at0).abs() < 1e-12);
    }

    #[test]
    fn first_kind_reduces_to_two_sided(g in 0.05f64..=1.0, x in -20.0f64..20.0) {
        let a = asym_weibull1_cdf(AsymWeibullILaw::new(1.0, 1.0, g).unwrap(), x);
        let b = two_sided_cdf(TwoSidedWeibullLaw::new(g).unwrap(), x);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn first_kind_at_gamma_one_is_laplace(a1 in 0.05f64..20.0, a2 in 0.05f64..20.0, x in -20.0f64..20.0) {
        let a = asym_weibull1_cdf(AsymWeibullILaw::new(a1, a2, 1.0).unwrap(), x);
        let b = asym_laplace_cdf(AsymLaplaceLaw::new(a1, a2).unwrap(), x);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn first_kind_quantile_round_trip(a1 in 0.1f64..10.0, a2 in 0.1f64..10.0, g in 0.1f64..=1.0, p in 0.001f64..0.999) {
        let law = AsymWeibullILaw::new(a1, a2, g).unwrap();
        let x = asym_weibull1_quantile(law, p).unwrap();
        prop_assert!((asym_weibull1_cdf(law, x) - p).abs() < 1e-9);
    }

    #[test]
    fn ks_pass_matches_threshold(values in prop::collection::vec(-1e3f64..1e3, 1..200),
                                 other in prop::collection::vec(-1e3f64..1e3, 1..200)) {
        let a = EmpiricalSample::new(values).unwrap();
        let b = EmpiricalSample::new(other).unwrap();
        prop_assert!(a.values().windows(2).all(|w| w[0] <= w[1]));
        for r in [ks_one_sample(&a, |x| 1.0 / (1.0 + (-x).exp())), ks_two_sample(&a, &b)] {
            prop_assert!((0.0..=1.0).contains(&r.statistic));
            prop_assert_eq!(r.pass, r.statistic < r.threshold);
        }
    }

    #[test]
    fn ensembles_are_prefix_stable(seed in any::<u64>(), lane in 0u32..8, n in 1usize..3 * ENSEMBLE_CHUNK) {
        // the first n draws do not depend on how many more are requested
        let short = ensemble(seed, lane, n, |r: &mut RandomStream| r.random::<u64>());
        let long = ensemble(seed, lane, n + 1000, |r: &mut RandomStream| r.random::<u64>());
        prop_assert_eq!(&short[..], &long[..n]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn h_mixing_cdf_is_monotone(g in 0.2f64..=1.0, y in 0.01f64..10.0, dy in 0.01f64..10.0) {
        let law = MixingLawH::new(g).unwrap();
        let (a, b) = (h_gamma_cdf(law, y).unwrap(), h_gamma_cdf(law, y + dy).unwrap());
        prop_assert!((0.0..=1.0).contains(&a) && a <= b + 1e-9);
    }
}

#[test]
fn h_mixing_cdf_limits() {
    for g in [0.3, 0.5, 0.7, 1.0] {
        let law = MixingLawH::new(g).unwrap();
        assert_eq!(h_gamma_cdf(law, 0.0).unwrap(), 0.0);
        // power-law head of order y^(gamma/2), stretched-exponential tail
        assert!(h_gamma_cdf(law, 1e-40).unwrap() < 1e-5, "gamma {g}");
        assert!(h_gamma_cdf(law, 1e8).unwrap() > 0.9999, "gamma {g}");
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(StableShape::new(0.0).is_err());
    assert!(StableShape::new(1.5).is_err());
    assert!(WeibullLaw::new(-1.0).is_err());
    assert!(WeibullLaw::new(f64::NAN).is_err());
    assert!(AsymWeibullILaw::new(1.0, 1.0, 2.0).is_err());
    assert!(AsymWeibullILaw::formal(1.0, 1.0, 2.0).is_ok());
    assert!(NvmParams::new(0.0, 0.0, 1.0).is_err());
    assert!(EmpiricalSample::new(vec![1.0, f64::NAN]).is_err());
    assert!(EmpiricalSample::new(vec![]).is_err());
}
