//! Seed derivation shared by experiments.
//!
//! Every trial gets its own ChaCha8 stream: the master seed picks the key and
//! the trial index picks the stream number, so trials are independent of the
//! order (and thread) in which they run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SketchRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Derives an independent child generator, e.g. for a sketch built inside a trial.
pub fn fork<R: rand::RngCore + ?Sized>(rng: &mut R) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(rng.next_u64())
}
