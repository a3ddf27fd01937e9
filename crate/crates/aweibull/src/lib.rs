//! Command-line front end, report formats and parallel ensembles for
//! `aweibull-core`.

pub mod cli;
pub mod parallel;
pub mod report;
pub mod verify;

pub use aweibull_core as core;
