//! One-sided, symmetric two-sided and asymmetric Weibull laws built from
//! normal scale and variance-mean mixtures.
//!
//! The crate is `no_std` (it needs `alloc` for sorting samples and holding
//! quadrature panels). All transcendental functions go through [`libm`], so
//! every sampler and quadrature is bit-reproducible across targets.
//!
//! Layout:
//!
//! - [`stats`]: special functions, adaptive quadrature, KS statistics, Monte
//!   Carlo estimators and the seeded [`stats::RandomStream`].
//! - [`stable`]: one-sided and symmetric strictly stable laws, the mixing
//!   engines behind every representation.
//! - [`weibull`]: closed forms for the one-sided and symmetric two-sided
//!   Weibull laws.
//! - [`mixtures`]: alternative product samplers for those laws and the mixing
//!   law `H_gamma` of the normal scale mixture.
//! - [`asymmetric`]: asymmetric Laplace as a variance-mean mixture and the two
//!   asymmetric Weibull families.
//! - [`randsum`]: triangular-array random sums converging to the second-kind
//!   asymmetric law.
//! - [`law`]: a tagged union over all families for front ends.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymmetric;
mod error;
pub mod law;
pub mod mixtures;
pub mod randsum;
pub mod stable;
pub mod stats;
pub mod weibull;

pub use error::{Error, Result};
