//! Deterministic per-stage RNG streams derived from one user seed.
//!
//! Every randomized stage draws from a ChaCha8 generator seeded with the
//! user seed and set to a stage-specific stream number, so one seed
//! reproduces the whole pipeline and no stage perturbs another's draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream numbers for the pipeline stages.
pub mod stream {
    /// Witness subset selection during instance generation.
    pub const WITNESS: u64 = 0;
    /// Random-order direct search permutation.
    pub const DIRECT_SEARCH: u64 = 1;
    /// Randomized SAT search trials.
    pub const PPSZ: u64 = 2;
    /// Per-instance seed derivation in the empirical query experiment.
    pub const EXPERIMENT: u64 = 3;
    /// Fresh equality-query guesses.
    pub const QUERY: u64 = 4;
    /// Planted Subset Sum instance generation.
    pub const PLANTED: u64 = 5;
}

/// The derivation rule: `ChaCha8Rng::seed_from_u64(seed)` with the word
/// stream set to `stage`.
pub fn stage_rng(seed: u64, stage: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stage);
    rng
}
