//! Extremal rotation angles: the real-spectrum bound, the complex-spectrum
//! envelope around the polar rotation angle, and the per-direction profile
//! `f(t) = cos(gamma)` in the eigenframe.

use std::f64::consts::PI;

use crate::error::Error;
use crate::matrix::{classify, signed_angle, Mat2, SpectrumClass, Vec2};
use crate::polar::polar_decompose;

/// How the signed rotation angle is distributed over directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeMode {
    /// Complex spectrum: every vector rotates with the same sign.
    OneDirectional,
    /// Real positive spectrum: a symmetric envelope on the unsigned angle;
    /// the two eigenvector cones rotate with opposite signs.
    Bidirectional,
    /// Both eigenvalues negative: composition with the central symmetry,
    /// reported as an unsigned range near pi.
    CentralSymmetric,
    /// Mixed-sign eigenvalues: x and phi(x) land in adjacent cones.
    AdjacentCones,
}

/// Envelope `[gamma_min, gamma_max]` for the rotation angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationRange {
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub mode: RangeMode,
}

/// Eigenframe profile parameters: eigenvalue ratio `delta = lambda2/lambda1`
/// and the acute angle `beta` between the eigenlines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileParams {
    delta: f64,
    beta: f64,
}

impl ProfileParams {
    pub fn new(delta: f64, beta: f64) -> Result<Self, Error> {
        if !(delta > 1.0) || !delta.is_finite() {
            return Err(Error::InvalidEigenvalues);
        }
        if !(beta > 0.0 && beta <= PI / 2.0) {
            return Err(Error::InvalidBeta);
        }
        Ok(Self { delta, beta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// `cos(gamma)` as a function of the eigenframe coordinate ratio
/// `t = x1/x2`.
pub fn f_profile(p: &ProfileParams, t: f64) -> f64 {
    let cb = p.beta.cos();
    let d = p.delta;
    let num = t * t + (1.0 + d) * t * cb + d;
    let den = (t * t + 2.0 * t * cb + 1.0).sqrt() * (t * t + 2.0 * d * t * cb + d * d).sqrt();
    num / den
}

/// The three roots of `f'(t) = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalPoints {
    pub t_zero: f64,
    /// Minimizer of `f` on `(0, +inf)`.
    pub t_plus: f64,
    /// Minimizer of `f` on `(-inf, 0)`; this is where `gamma_max` is
    /// attained.
    pub t_minus: f64,
}

/// Critical points of the profile: roots of `t^3 - delta t`.
pub fn f_critical_points(p: &ProfileParams) -> CriticalPoints {
    let s = p.delta.sqrt();
    CriticalPoints { t_zero: 0.0, t_plus: s, t_minus: -s }
}

/// Maximal unsigned rotation angle for a real positive spectrum
/// `0 < lambda1 < lambda2` with eigenline angle `beta`.
pub fn gamma_max_real(lambda1: f64, lambda2: f64, beta: f64) -> Result<f64, Error> {
    if !(lambda1 > 0.0 && lambda2 > lambda1) {
        return Err(Error::InvalidEigenvalues);
    }
    if !(beta > 0.0 && beta <= PI / 2.0) {
        return Err(Error::InvalidBeta);
    }
    let g = (lambda1 * lambda2).sqrt();
    let cb = beta.cos();
    let num = 2.0 * g - (lambda1 + lambda2) * cb;
    let den = lambda1 + lambda2 - 2.0 * g * cb;
    Ok((num / den).clamp(-1.0, 1.0).acos())
}

/// Maximal rotation angle of the positive polar factor, from the
/// eigenvalues `lambda, mu` of `A^t A`.
pub fn gamma_prime_max(lambda: f64, mu: f64) -> f64 {
    let s1 = lambda.sqrt();
    let s2 = mu.sqrt();
    ((2.0 * (s1 * s2).sqrt() / (s1 + s2)).clamp(-1.0, 1.0)).acos()
}

/// Envelope of the rotation angle over all directions, dispatched on the
/// spectrum class.
pub fn rotation_range(a: Mat2) -> Result<RotationRange, Error> {
    match classify(a)? {
        SpectrumClass::ComplexPair { .. } => {
            let p = polar_decompose(a)?;
            let g = gamma_prime_max(p.sqrt_lambda * p.sqrt_lambda, p.sqrt_mu * p.sqrt_mu);
            Ok(RotationRange {
                gamma_min: p.alpha - g,
                gamma_max: p.alpha + g,
                mode: RangeMode::OneDirectional,
            })
        }
        SpectrumClass::RealDistinct { lambda1, lambda2, beta, .. } => {
            if lambda1 > 0.0 {
                let g = gamma_max_real(lambda1, lambda2, beta)?;
                Ok(RotationRange { gamma_min: -g, gamma_max: g, mode: RangeMode::Bidirectional })
            } else if lambda2 < 0.0 {
                // |lambda2| < |lambda1| since lambda1 < lambda2 < 0
                let g = gamma_max_real(-lambda2, -lambda1, beta)?;
                Ok(RotationRange {
                    gamma_min: PI - g,
                    gamma_max: PI,
                    mode: RangeMode::CentralSymmetric,
                })
            } else {
                Ok(RotationRange { gamma_min: 0.0, gamma_max: PI, mode: RangeMode::AdjacentCones })
            }
        }
    }
}

/// Signed rotation angle of a single vector under `a`.
pub fn gamma_of(a: Mat2, x: Vec2) -> Result<f64, Error> {
    signed_angle(x, a.apply(x))
}
