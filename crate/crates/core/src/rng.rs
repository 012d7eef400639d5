//! Per-instance random streams: instance `i` of a run seeded with `s` always
//! draws from the same generator, whatever order instances are evaluated in.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a run seed and an instance id into one 64-bit seed.
pub fn instance_seed(seed: u64, instance: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ instance)
}

pub fn instance_rng(seed: u64, instance: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(instance_seed(seed, instance))
}
