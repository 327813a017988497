#![allow(dead_code)]

use itsp_core::gen::random_instance;
use itsp_core::temperature::{Instance, ProfileKind, ProfilePair};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PROCESSING: [(u64, u64); 2] = [(10, 20), (10, 100)];
pub const DISTANCE: [(u64, u64); 2] = [(10, 20), (10, 100)];
pub const MAX_TEMPS: [f64; 5] = [20.0, 40.0, 60.0, 80.0, 100.0];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn kind() -> impl Strategy<Value = ProfileKind> {
    prop::sample::select(ProfileKind::ALL.to_vec())
}

/// Instances drawn from the benchmark parameter grid with up to `max_n`
/// nodes.
pub fn grid_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (
        any::<u64>(),
        2..=max_n,
        prop::sample::select(PROCESSING.to_vec()),
        prop::sample::select(DISTANCE.to_vec()),
        prop::sample::select(MAX_TEMPS.to_vec()),
        kind(),
    )
        .prop_map(|(seed, n, p, d, b, k)| {
            random_instance(n, p, d, b, ProfilePair::uniform(k), &mut rng(seed))
        })
}

/// Small instances whose processing times force several visits per node.
pub fn small_instance(max_n: usize, max_p: u64) -> impl Strategy<Value = Instance> {
    (any::<u64>(), 2..=max_n, 1..=max_p, 1u64..=30, kind(), 1u32..=3)
        .prop_map(|(seed, n, pmax, dmax, k, scale)| {
            let b = match k {
                ProfileKind::Linear => 2.0 * scale as f64,
                ProfileKind::Quadratic => 4.0 * scale as f64 + 0.5,
                ProfileKind::Exponential => 3.0 * scale as f64 + 5.0,
            };
            random_instance(n, (1, pmax), (1, dmax), b, ProfilePair::uniform(k), &mut rng(seed))
        })
}
