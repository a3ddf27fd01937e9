//! Numerical substrate shared by every distribution module.

mod ks;
mod montecarlo;
pub mod quadrature;
mod rng;
mod special;
mod tabulated;

pub use ks::{
    ks_one_sample, ks_two_sample, one_sample_threshold, two_sample_threshold, EmpiricalSample,
    KsReport, KS_SAFETY, KS_SCALE,
};
pub use montecarlo::{empirical_cf, mean_estimate, ComplexEstimate, MeanEstimate};
pub use quadrature::{adaptive_quadrature, Integral, Tolerance};
pub use rng::{
    ensemble, ensemble_chunk, exp1, std_normal, stream_index, uniform_open01, RandomStream,
    ENSEMBLE_CHUNK,
};
pub use special::{gamma_fn, half_normal_cdf, ln_gamma, std_normal_cdf, std_normal_pdf};
pub use tabulated::TabulatedCdf;
