//! Deterministic stream derivation.
//!
//! Every source of randomness in the crate is a ChaCha stream keyed by a user
//! seed plus a list of integer tags (replication index, menu index, draw
//! index, ...). Streams with distinct tag paths are independent, so loops over
//! draws or replications can run in parallel and still produce output that is
//! bit-identical to sequential execution.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream tags, one per kind of consumer. Keeps unrelated streams apart even
/// when their numeric indices collide.
pub mod tag {
    pub const SAMPLE: u64 = 1;
    pub const CV_DRAW: u64 = 2;
    pub const REPLICATION: u64 = 3;
    pub const BOUND: u64 = 4;
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix a seed and a tag path into a single 64-bit stream key.
pub fn mix(seed: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(seed ^ 0x6A09_E667_F3BC_C908);
    for (i, &t) in tags.iter().enumerate() {
        state = splitmix64(state ^ t.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9)));
    }
    state
}

/// Construct the ChaCha stream for `(seed, tags...)`.
pub fn stream(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let key = mix(seed, tags);
    let mut bytes = [0u8; 32];
    let mut s = key;
    for chunk in bytes.chunks_exact_mut(8) {
        s = splitmix64(s);
        chunk.copy_from_slice(&s.to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}
