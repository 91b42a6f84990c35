//! Monte Carlo oracles.
//!
//! * [`draws`] samples the reduced `(G, H, W)` representation of the
//!   two-model selection problem and estimates coverage directly.
//! * [`regression`] simulates full linear-regression data, runs the
//!   selection rules over all candidate submodels and measures the empirical
//!   coverage of the naive interval.
//!
//! Replications are split into fixed-size chunks; chunk `i` draws from an
//! independent ChaCha stream `i` keyed by the user seed, so results do not
//! depend on thread count or scheduling.

pub mod draws;
pub mod regression;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use draws::{mc_coverage_c2, AppendixCDraw, DrawSampler};
pub use regression::{
    empirical_min_coverage, naive_interval, rss_subset, select_model, simulate_coverage,
    CandidateFamily, CoverageRow, SimDesign, Subset, SubsetState,
};

/// Replications per RNG stream.
pub const CHUNK: usize = 1 << 14;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Chunk sizes covering `total` replications.
pub(crate) fn chunks(total: usize) -> Vec<usize> {
    let full = total / CHUNK;
    let mut v = vec![CHUNK; full];
    if total % CHUNK != 0 {
        v.push(total % CHUNK);
    }
    v
}

/// Binomial proportion with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_err: f64,
    pub n: usize,
}

impl McEstimate {
    pub fn from_counts(hits: u64, n: usize) -> Self {
        if n == 0 {
            return Self { estimate: f64::NAN, std_err: f64::NAN, n };
        }
        let p = hits as f64 / n as f64;
        Self {
            estimate: p,
            std_err: (p * (1.0 - p) / n as f64).sqrt(),
            n,
        }
    }
}
