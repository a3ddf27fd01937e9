use alloc::vec::Vec;

use libm::log;
use rand::distr::Open01;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// A seeded, counter-based random stream.
///
/// `(seed, stream_index)` fully determines the draw sequence. Distinct
/// stream indices under one seed select disjoint ChaCha8 streams, which is
/// what lets ensembles be split across workers without changing results.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    stream_index: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_index);
        RandomStream {
            seed,
            stream_index,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// A fresh stream with the same seed and another index.
    pub fn substream(&self, stream_index: u64) -> Self {
        RandomStream::new(self.seed, stream_index)
    }
}

impl RngCore for RandomStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    #[inline]
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Packs a purpose tag (`lane`) and a chunk/replicate counter into one
/// stream index.
pub const fn stream_index(lane: u32, index: u32) -> u64 {
    ((lane as u64) << 32) | index as u64
}

/// Draws per stream in [`ensemble`]. Part of the reproducibility contract:
/// changing it changes every ensemble.
pub const ENSEMBLE_CHUNK: usize = 4096;

/// Draws chunk `chunk` of an ensemble: up to [`ENSEMBLE_CHUNK`] values from
/// the stream `(seed, stream_index(lane, chunk))`, truncated to `n` total.
pub fn ensemble_chunk<T, F>(seed: u64, lane: u32, chunk: usize, n: usize, draw: &mut F) -> Vec<T>
where
    F: FnMut(&mut RandomStream) -> T,
{
    let start = chunk * ENSEMBLE_CHUNK;
    let len = n.saturating_sub(start).min(ENSEMBLE_CHUNK);
    let mut rng = RandomStream::new(seed, stream_index(lane, chunk as u32));
    (0..len).map(|_| draw(&mut rng)).collect()
}

/// `n` draws split over fixed-size chunks, one stream per chunk.
///
/// Any parallel evaluation that computes the same chunks and concatenates
/// them in order yields identical output.
pub fn ensemble<T, F>(seed: u64, lane: u32, n: usize, mut draw: F) -> Vec<T>
where
    F: FnMut(&mut RandomStream) -> T,
{
    let chunks = n.div_ceil(ENSEMBLE_CHUNK);
    let mut out = Vec::with_capacity(n);
    for c in 0..chunks {
        out.extend(ensemble_chunk(seed, lane, c, n, &mut draw));
    }
    out
}

/// Uniform on the open interval `(0, 1)`.
#[inline]
pub fn uniform_open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}

/// Standard exponential by inversion; strictly positive and finite.
#[inline]
pub fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -log(uniform_open01(rng))
}

#[inline]
pub fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}
