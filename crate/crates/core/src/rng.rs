//! Seeded, stream-split random number generation.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] keyed by a master
//! seed and positioned on a named stream. ChaCha is counter based, so distinct
//! `(name, index)` pairs select disjoint keystreams and replicas never collide.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// A master seed from which named streams are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedTree {
    master: u64,
}

impl SeedTree {
    pub fn new(master: u64) -> Self {
        Self { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// Generator for stream `name`, replica `index`.
    pub fn stream(&self, name: &str, index: u64) -> StreamRng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(stream_id(name, index));
        rng
    }

    /// A derived child seed, for APIs that take a plain `u64` seed.
    pub fn child_seed(&self, name: &str, index: u64) -> u64 {
        splitmix64(self.master ^ stream_id(name, index))
    }
}

/// Generator for a plain integer seed (stream 0).
pub fn from_seed(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for a plain seed on a named sub-stream.
pub fn substream(seed: u64, name: &str) -> StreamRng {
    SeedTree::new(seed).stream(name, 0)
}

fn stream_id(name: &str, index: u64) -> u64 {
    // FNV-1a over the name, then mix in the index.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    splitmix64(h ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
