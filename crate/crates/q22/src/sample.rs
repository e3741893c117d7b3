//! Seed-deterministic random primitives.
//!
//! All randomness in the crate flows through [`seeded_rng`], so every sampler
//! is reproducible for a fixed seed.

use crate::matrix::{C64, Vec4C};
use crate::quat::Quat;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn gaussian_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(gaussian(rng), gaussian(rng))
}

pub fn gaussian_vec4(rng: &mut ChaCha8Rng) -> Vec4C {
    [
        gaussian_c64(rng),
        gaussian_c64(rng),
        gaussian_c64(rng),
        gaussian_c64(rng),
    ]
}

/// Uniform random unit quaternion (a point of Σ ≅ S³).
pub fn unit_quat(rng: &mut ChaCha8Rng) -> Quat {
    loop {
        let q = Quat::new(gaussian_c64(rng), gaussian_c64(rng));
        let n = q.norm();
        if n > 1e-6 {
            return q.scale(1.0 / n);
        }
    }
}

/// Random quaternion with Gaussian components (not normalized).
pub fn gaussian_quat(rng: &mut ChaCha8Rng) -> Quat {
    Quat::new(gaussian_c64(rng), gaussian_c64(rng))
}
