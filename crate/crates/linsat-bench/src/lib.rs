//! Shared fixtures for the microbenchmarks.

use linsat_core::generators::{self, GenConfig, Kind};
use linsat_core::{Assignment, Instance};

pub fn random_instance(q: u32, n: usize, m: usize, r: usize, seed: u64) -> Instance {
    generators::random(&GenConfig::new(q, n, m, r, seed, Kind::Random))
        .expect("benchmark fixture generates")
}

pub fn fixed_assignment(inst: &Instance, seed: u64) -> Assignment {
    linsat_core::random_assignment(inst, seed).assignment
}
