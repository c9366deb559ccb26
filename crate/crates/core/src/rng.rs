//! Seeded, reproducible random streams.
//!
//! Every stochastic routine in the crate draws from a [`SeededRng`]. Streams
//! are ChaCha8 keyed by the 64-bit seed; sub-streams for per-sample work are
//! derived through the ChaCha stream counter so results do not depend on the
//! order in which samples are evaluated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const ALGORITHM_ID: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeededRng {
    pub seed: u64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn algorithm_id(&self) -> &'static str {
        ALGORITHM_ID
    }

    /// The primary stream for this seed.
    pub fn stream(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// An independent sub-stream, e.g. one per Monte-Carlo sample.
    pub fn substream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index.wrapping_add(1));
        rng
    }

    /// A child generator with a seed mixed from this seed and `tag`.
    pub fn child(&self, tag: u64) -> SeededRng {
        // splitmix64 finalizer
        let mut z = self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        SeededRng::new(z ^ (z >> 31))
    }

    /// `k` distinct indices from `0..n` in increasing order; all of them when `k >= n`.
    pub fn sample_indices(&self, n: usize, k: usize) -> Vec<usize> {
        if k >= n {
            return (0..n).collect();
        }
        let mut idx = rand::seq::index::sample(&mut self.stream(), n, k).into_vec();
        idx.sort_unstable();
        idx
    }
}
