//! Deterministic RNG streams for reproducible experiments.
//!
//! Every trial draws from ChaCha streams derived from `(base_seed, trial)`,
//! one stream for the gambler and one for the strategy, so results are
//! identical across platforms and independent of trial execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GameRng = ChaCha8Rng;

/// Stream lane within a trial.
pub const LANE_GAMBLER: u64 = 0;
pub const LANE_STRATEGY: u64 = 1;

pub fn trial_rng(base_seed: u64, trial: u64, lane: u64) -> GameRng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(trial.wrapping_mul(2).wrapping_add(lane));
    rng
}
