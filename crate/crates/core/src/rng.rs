//! Seeded, splittable random streams.
//!
//! A single master seed fans out to named substreams, and each substream can
//! split further into per-item streams. Item streams depend only on
//! `(seed, label, index)`, never on thread scheduling, so parallel generation
//! is bitwise reproducible at any worker count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derives named and indexed substreams from one master seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedFanout {
    master: u64,
}

impl SeedFanout {
    pub fn new(master: u64) -> Self {
        SeedFanout { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// RNG for a named stage (e.g. "data", "svm", "mso", "verify").
    pub fn stream(&self, label: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.stream_seed(label))
    }

    /// RNG for item `index` within a named stage.
    pub fn item_stream(&self, label: &str, index: u64) -> ChaCha8Rng {
        let seed = splitmix64(self.stream_seed(label) ^ splitmix64(index.wrapping_add(1)));
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Plain seed for a named stage, for configs that carry their own seed
    /// field.
    pub fn derived_seed(&self, label: &str) -> u64 {
        self.stream_seed(label)
    }

    fn stream_seed(&self, label: &str) -> u64 {
        splitmix64(self.master ^ fnv1a(label.as_bytes()))
    }
}
