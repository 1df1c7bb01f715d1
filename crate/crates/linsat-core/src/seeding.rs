//! Deterministic randomness for generators and solvers.
//!
//! All randomness flows from ChaCha8 (rand_chacha's `ChaCha8Rng`), a named
//! stream cipher RNG with a published reference implementation. A 64-bit seed
//! expands to the 256-bit key via `seed_from_u64` (SplitMix64 expansion), and
//! independent substreams come from ChaCha's 64-bit stream parameter:
//! substream `k` of seed `s` is `ChaCha8Rng::seed_from_u64(s)` with
//! `set_stream(k)`. Generators draw row `i` from substream `i + 1` and
//! instance-level values from substream 0, so parallel generation cannot
//! depend on scheduling.
//!
//! Named seeds (CLI subcommands, bench cells) derive from a master seed by
//! [`derive_seed`]: FNV-1a over the label and index, mixed with the master
//! seed and finalized with the SplitMix64 mixer. The constants are fixed and
//! part of the file-format contract.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Substream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives a named sub-seed from a master seed.
///
/// Stable across platforms and releases: FNV-1a(label, index-LE) xor master,
/// then the SplitMix64 finalizer.
pub fn derive_seed(master: u64, label: &str, index: u64) -> u64 {
    const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = FNV_OFFSET;
    for &byte in label.as_bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(FNV_PRIME);
    }
    for byte in index.to_le_bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(FNV_PRIME);
    }
    splitmix64(h ^ master)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
