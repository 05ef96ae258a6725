//! Seed derivation.
//!
//! Every random stream in a run is derived from one root seed and a path of
//! tags, so that perturbations, episode dynamics and verification draws never
//! share a generator and a stream's contents do not depend on evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for every stream in the crate.
pub type StreamRng = ChaCha8Rng;

pub const TAG_INIT: u64 = 1;
pub const TAG_TRAIN: u64 = 2;
pub const TAG_VERIFY: u64 = 3;
pub const TAG_PERTURB: u64 = 4;
pub const TAG_EPISODE: u64 = 5;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes `root` with each tag in turn.
pub fn derive_seed(root: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(root), |acc, &tag| splitmix64(acc ^ splitmix64(tag)))
}

pub fn stream(root: u64, path: &[u64]) -> StreamRng {
    StreamRng::seed_from_u64(derive_seed(root, path))
}
