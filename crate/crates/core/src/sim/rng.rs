//! Seeded random streams.
//!
//! Every stream is a ChaCha8 generator keyed by `ChaCha8Rng::seed_from_u64(base_seed)`
//! with its 64-bit stream number set to `trial_index * 16 + stream_id`. The
//! mapping from `(base_seed, trial_index, stream_id)` to output is therefore
//! fixed by the `rand_chacha` key expansion and independent of thread count or
//! scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Honest block production inside a trial.
pub const STREAM_HONEST: u64 = 0;
/// Adversarial block production inside a trial.
pub const STREAM_ADVERSARY: u64 = 1;
/// Corruption draws.
pub const STREAM_CORRUPTION: u64 = 2;

const STREAMS_PER_TRIAL: u64 = 16;

pub fn stream_rng(base_seed: u64, trial_index: u64, stream_id: u64) -> ChaCha8Rng {
    assert!(stream_id < STREAMS_PER_TRIAL, "stream id out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(
        trial_index
            .checked_mul(STREAMS_PER_TRIAL)
            .expect("trial index too large")
            + stream_id,
    );
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn draw(seed: u64, trial: u64, stream: u64) -> Vec<u64> {
        let mut r = stream_rng(seed, trial, stream);
        (0..8).map(|_| r.random()).collect()
    }

    #[test]
    fn reproducible() {
        assert_eq!(draw(7, 3, STREAM_HONEST), draw(7, 3, STREAM_HONEST));
    }

    #[test]
    fn streams_differ() {
        assert_ne!(draw(7, 3, STREAM_HONEST), draw(7, 3, STREAM_ADVERSARY));
        assert_ne!(draw(7, 3, STREAM_HONEST), draw(7, 4, STREAM_HONEST));
        assert_ne!(draw(7, 3, STREAM_HONEST), draw(8, 3, STREAM_HONEST));
    }
}
