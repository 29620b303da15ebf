//! Seeded workloads shared by the benchmarks.

use chainloss_core::algebra::{MethodAvailabilityVector, ProbabilisticAdaptationFactor};
use chainloss_core::random::{random_availability, random_factor, FactorParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `g` after `f` over square `slots × slots` factors, plus a source vector.
pub struct FactorPair {
    pub f: ProbabilisticAdaptationFactor,
    pub g: ProbabilisticAdaptationFactor,
    pub p: MethodAvailabilityVector,
}

pub fn factor_pair(slots: usize, seed: u64) -> FactorPair {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = FactorParams::default();
    FactorPair {
        f: random_factor(&mut rng, slots, slots, params),
        g: random_factor(&mut rng, slots, slots, params),
        p: random_availability(&mut rng, slots),
    }
}
