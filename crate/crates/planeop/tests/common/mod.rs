//! Shared helpers for the integration suites: seeded random matrices with
//! the conditioning filter used throughout.

use planeop::matrix::Mat2;
use planeop::polar::operator_norm;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> Mat2 {
    Mat2::new(
        rng.random_range(-3.0..3.0),
        rng.random_range(-3.0..3.0),
        rng.random_range(-3.0..3.0),
        rng.random_range(-3.0..3.0),
    )
}

pub fn condition_number(m: Mat2) -> f64 {
    match m.inverse() {
        Some(inv) => operator_norm(m) * operator_norm(inv),
        None => f64::INFINITY,
    }
}

/// Entries uniform in [-3, 3], `det > det_min`, condition number < 1e6.
pub fn random_well_conditioned(rng: &mut ChaCha8Rng, det_min: f64) -> Mat2 {
    loop {
        let m = random_matrix(rng);
        if m.det() > det_min && condition_number(m) < 1e6 {
            return m;
        }
    }
}
