//! Labeled deterministic random streams.
//!
//! Every stream is a ChaCha8 generator whose key is derived from a master
//! seed and a stream label, so `stream(seed, "cut")` and
//! `stream(seed, "adversary")` are independent and reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub type StreamRng = ChaCha8Rng;

pub const PLANTED: &str = "planted";
pub const CUT: &str = "cut";
pub const ADVERSARY: &str = "adversary";
pub const GAUSSIAN: &str = "gaussian";

/// Stable 64-bit hash of a canonical string.
pub fn stable_hash(text: &str) -> u64 {
    let digest = Sha256::digest(text.as_bytes());
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

/// Hash of `parts` joined with `|`, used for per-trial and per-cell seeds.
pub fn derive_seed(master: u64, parts: &[&str]) -> u64 {
    let mut text = master.to_string();
    for part in parts {
        text.push('|');
        text.push_str(part);
    }
    stable_hash(&text)
}

pub fn stream(seed: u64, label: &str) -> StreamRng {
    let digest = Sha256::digest(format!("{seed}#{label}").as_bytes());
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// Stream for the `index`-th independent sample under `seed`.
///
/// Cheap enough to call once per sampled tuple; results do not depend on
/// which worker evaluates which index.
pub fn indexed(seed: u64, index: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(index.wrapping_add(0x5851_f42d_4c95_7f2d))))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
