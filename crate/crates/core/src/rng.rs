//! Stream-keyed random number generation.
//!
//! Every independent job (a Monte Carlo trace, a tilt realization) draws from
//! its own ChaCha stream selected by `(seed, stream)`, so results do not depend
//! on the order in which jobs are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
