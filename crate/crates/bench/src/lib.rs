//! Shared inputs for the benchmarks.

use pursuit::experiments::{GameSampler, SamplerConfig};
use pursuit::PlayerSet;

pub const SEED: u64 = 2024;

/// The first `n` well-conditioned games.
pub fn games(n: usize) -> Vec<PlayerSet> {
    GameSampler::new(SamplerConfig::well_conditioned(), SEED)
        .and_then(|s| s.sample_many(n))
        .expect("default sampler is valid")
}
