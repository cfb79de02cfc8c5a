//! Monte Carlo estimates over the complex-spectrum coefficient domain.
//!
//! The change of variables `a = (x+t)/sqrt(2)`, `b = (y+z)/sqrt(2)`,
//! `c = (y-z)/sqrt(2)`, `d = (t-x)/sqrt(2)` turns the complex-spectrum
//! condition into `x^2 + y^2 < z^2`. Sampling is by rejection from the
//! product of two unit disks; the acceptance ratio itself estimates the
//! relative volume 1/4 of the domain.

use std::f64::consts::SQRT_2;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::matrix::Mat2;

/// A point of the rotated coefficient space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub t: f64,
}

impl GPoint {
    /// Membership in the complex-spectrum domain G.
    pub fn in_g(&self) -> bool {
        self.x * self.x + self.y * self.y < self.z * self.z
    }
}

/// Rotated coordinates of a coefficient matrix.
pub fn to_xyzt(a: Mat2) -> GPoint {
    GPoint {
        x: (a.a - a.d) / SQRT_2,
        y: (a.b + a.c) / SQRT_2,
        z: (a.b - a.c) / SQRT_2,
        t: (a.a + a.d) / SQRT_2,
    }
}

/// Inverse of [`to_xyzt`].
pub fn from_xyzt(p: &GPoint) -> Mat2 {
    Mat2::new(
        (p.x + p.t) / SQRT_2,
        (p.y + p.z) / SQRT_2,
        (p.y - p.z) / SQRT_2,
        (p.t - p.x) / SQRT_2,
    )
}

/// Maximal rotation angle of the positive factor,
/// `arcsin(sqrt((x^2+y^2)/(t^2+z^2)))`, defined inside G.
pub fn gamma_prime_max_at(p: &GPoint) -> Result<f64, Error> {
    if !p.in_g() {
        return Err(Error::OutsideDomain);
    }
    let ratio = (p.x * p.x + p.y * p.y) / (p.t * p.t + p.z * p.z);
    Ok(ratio.sqrt().clamp(0.0, 1.0).asin())
}

/// Rotation angle of the orthogonal factor, `arccos(t/sqrt(t^2+z^2))`,
/// defined on the `z > 0` half of the domain.
pub fn alpha_at(p: &GPoint) -> Result<f64, Error> {
    if p.z <= 0.0 || p.t * p.t + p.z * p.z == 0.0 {
        return Err(Error::OutsideDomain);
    }
    Ok((p.t / p.t.hypot(p.z)).clamp(-1.0, 1.0).acos())
}

/// Candidates per RNG stream. Accumulation is also chunked on this
/// boundary, so a partitioned run reproduces the sequential result.
const CHUNK: u64 = 1 << 16;

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk + 1);
    rng
}

fn unit_disk(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let x: f64 = rng.random_range(-1.0..1.0);
        let y: f64 = rng.random_range(-1.0..1.0);
        if x * x + y * y < 1.0 {
            return (x, y);
        }
    }
}

/// One candidate: `(x, y)` and `(z, t)` each uniform on the unit disk.
fn draw_candidate(rng: &mut ChaCha8Rng) -> GPoint {
    let (x, y) = unit_disk(rng);
    let (z, t) = unit_disk(rng);
    GPoint { x, y, z, t }
}

/// Deterministic stream of accepted points of G' = G intersected with the
/// product of unit disks. `n` counts candidate draws, so the yielded count
/// is close to `n / 4`.
pub struct GPrimeSampler {
    seed: u64,
    drawn: u64,
    n: u64,
    rng: ChaCha8Rng,
}

impl GPrimeSampler {
    fn new(seed: u64, n: u64) -> Self {
        Self { seed, drawn: 0, n, rng: chunk_rng(seed, 0) }
    }
}

impl Iterator for GPrimeSampler {
    type Item = GPoint;

    fn next(&mut self) -> Option<GPoint> {
        while self.drawn < self.n {
            if self.drawn > 0 && self.drawn % CHUNK == 0 {
                self.rng = chunk_rng(self.seed, self.drawn / CHUNK);
            }
            self.drawn += 1;
            let p = draw_candidate(&mut self.rng);
            if p.in_g() {
                return Some(p);
            }
        }
        None
    }
}

/// Rejection sampler over G', deterministic for a fixed seed.
pub fn sample_g_prime(seed: u64, n: u64) -> GPrimeSampler {
    GPrimeSampler::new(seed, n)
}

/// A Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    /// Candidate draws.
    pub n_samples: u64,
    /// Points that entered the mean.
    pub n_accepted: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Fraction of candidates that entered the mean.
    pub fn acceptance_ratio(&self) -> f64 {
        self.n_accepted as f64 / self.n_samples as f64
    }
}

#[derive(Clone, Copy, Default)]
struct Accum {
    sum: f64,
    sum_sq: f64,
    count: u64,
}

impl Accum {
    fn push(&mut self, v: f64) {
        self.sum += v;
        self.sum_sq += v * v;
        self.count += 1;
    }

    fn merge(&mut self, o: Accum) {
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
        self.count += o.count;
    }

    fn finish(self, seed: u64, n_samples: u64) -> McEstimate {
        let n = self.count as f64;
        let mean = self.sum / n;
        let var = ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0);
        McEstimate {
            mean,
            std_error: (var / n).sqrt(),
            n_samples,
            n_accepted: self.count,
            seed,
        }
    }
}

const MIN_SAMPLES: u64 = 10_000;

fn estimate<F>(seed: u64, n: u64, f: F) -> Result<McEstimate, Error>
where
    F: Fn(&GPoint) -> Option<f64>,
{
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { got: n, min: MIN_SAMPLES });
    }
    let mut total = Accum::default();
    let chunks = n.div_ceil(CHUNK);
    for chunk in 0..chunks {
        let count = CHUNK.min(n - chunk * CHUNK);
        let mut rng = chunk_rng(seed, chunk);
        let mut acc = Accum::default();
        for _ in 0..count {
            let p = draw_candidate(&mut rng);
            if let Some(v) = f(&p) {
                acc.push(v);
            }
        }
        total.merge(acc);
    }
    Ok(total.finish(seed, n))
}

/// Mean of the maximal positive-factor rotation angle over G'.
/// Converges to 2/pi.
pub fn estimate_mean_gamma_prime(seed: u64, n: u64) -> Result<McEstimate, Error> {
    estimate(seed, n, |p| {
        if p.in_g() {
            Some(gamma_prime_max_at(p).expect("point accepted into G"))
        } else {
            None
        }
    })
}

/// Mean of the orthogonal-factor rotation angle over the `z > 0` half of
/// G'. Converges to pi/2.
pub fn estimate_mean_alpha(seed: u64, n: u64) -> Result<McEstimate, Error> {
    estimate(seed, n, |p| {
        if p.in_g() && p.z > 0.0 {
            Some(alpha_at(p).expect("z > 0 checked"))
        } else {
            None
        }
    })
}
