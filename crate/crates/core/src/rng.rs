//! Counter-based random streams.
//!
//! Every random draw in this crate comes from a ChaCha stream selected by a
//! `(seed, index)` pair, so independent draws can be generated in any order
//! or in parallel and still reproduce bit-identical results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for draw number `index` under `seed`.
pub fn keyed(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
