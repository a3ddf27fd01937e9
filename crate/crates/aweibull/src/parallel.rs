//! Ensembles drawn on the rayon pool.
//!
//! Chunks are the same fixed-size substreams the sequential
//! [`aweibull_core::stats::ensemble`] uses, evaluated in parallel and
//! concatenated in chunk order, so the output does not depend on the number
//! of workers.

use aweibull_core::randsum::{
    index_ratio, simulate_random_sum, simulate_row_sum, RandomSumScheme, StudyEnsembles,
    LANE_INDICES, LANE_REFERENCE, LANE_ROWS, LANE_SUMS,
};
use aweibull_core::asymmetric::sample_asym_weibull2;
use aweibull_core::stats::{ensemble_chunk, RandomStream, ENSEMBLE_CHUNK};
use rayon::prelude::*;

/// Parallel counterpart of [`aweibull_core::stats::ensemble`], identical output.
pub fn par_ensemble<T, F>(seed: u64, lane: u32, n: usize, draw: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RandomStream) -> T + Sync,
{
    let chunks = n.div_ceil(ENSEMBLE_CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| ensemble_chunk(seed, lane, c, n, &mut |r: &mut RandomStream| draw(r)))
        .collect();
    let mut out = Vec::with_capacity(n);
    for p in parts {
        out.extend(p);
    }
    out
}

/// Parallel counterpart of [`aweibull_core::randsum::study_ensembles`].
pub fn par_study_ensembles(scheme: &RandomSumScheme, n: usize, seed: u64) -> StudyEnsembles {
    let target = scheme.target();
    StudyEnsembles {
        rows: par_ensemble(seed, LANE_ROWS, n, |r| simulate_row_sum(scheme, r)),
        indices: par_ensemble(seed, LANE_INDICES, n, |r| index_ratio(scheme, r)),
        sums: par_ensemble(seed, LANE_SUMS, n, |r| simulate_random_sum(scheme, r)),
        reference: par_ensemble(seed, LANE_REFERENCE, n, |r| sample_asym_weibull2(target, r)),
    }
}
