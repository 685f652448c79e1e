//! Seeded random streams.
//!
//! Every sampling loop derives one ChaCha8 generator per work item: the
//! user seed is the key and the item index selects the stream
//! (`set_stream(index)`). Results therefore depend only on `(seed, index)`,
//! never on thread count or scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Generator for work item `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
