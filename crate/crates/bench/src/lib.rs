//! Shared inputs for the benchmarks.

use dimer_core::dimer::WeightSystem;
use dimer_core::{suite, SurfaceGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every reference graph with a fixed pseudo-random weight system.
pub fn weighted_suite() -> Vec<(&'static str, SurfaceGraph, WeightSystem)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    suite::NAMES
        .iter()
        .map(|&name| {
            let g = suite::by_name(name).expect("listed graph");
            let w = WeightSystem::random(&g, &mut rng);
            (name, g, w)
        })
        .collect()
}
