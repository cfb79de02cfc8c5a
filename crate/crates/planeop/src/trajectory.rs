//! Invariant ellipses and orbits of complex-spectrum operators with
//! determinant 1.
//!
//! Such an operator acts as the rotation by `theta = arccos(trace/2)` in the
//! basis built from the real and imaginary parts of its complex eigenvector,
//! so every orbit stays on an ellipse.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::Error;
use crate::matrix::{classify, eigen_symmetric, Mat2, SpectrumClass, Vec2};

/// Basis in which the operator is the rotation by `theta`.
#[derive(Clone, Copy, Debug)]
pub struct InvariantBasis {
    /// Real part of the complex eigenvector.
    pub u: Vec2,
    /// Imaginary part, sign-fixed so the operator acts as rot(+theta).
    pub v: Vec2,
    /// Rotation angle in `(0, pi)`.
    pub theta: f64,
    /// Change of basis from standard coordinates to `(u, v)` coordinates.
    pub p: Mat2,
}

/// Quadratic-form data of the invariant conic.
#[derive(Clone, Copy, Debug)]
pub struct ConicInvariants {
    /// Form matrix `A_f = P^t P`.
    pub af: Mat2,
    /// Trace invariant.
    pub s: f64,
    /// Determinant invariant, equal to `det(P)^2`.
    pub delta: f64,
}

/// Full description of the invariant ellipse through a point.
#[derive(Clone, Copy, Debug)]
pub struct EllipseReport {
    pub af: Mat2,
    pub s: f64,
    pub delta: f64,
    /// Bordered-determinant invariant `-delta * r^2`, negative for an
    /// ellipse.
    pub big_delta: f64,
    /// Eigenvalues `0 < lambda_p < mu_p` of the form matrix.
    pub lambda_p: f64,
    pub mu_p: f64,
    /// `r / sqrt(lambda_p)`.
    pub semi_major: f64,
    /// `r / sqrt(mu_p)`.
    pub semi_minor: f64,
    pub r2: f64,
    pub axis_major: Vec2,
    pub axis_minor: Vec2,
}

impl EllipseReport {
    /// Value of the quadratic form at a point; equals `r2` on the ellipse.
    pub fn form_value(&self, p: Vec2) -> f64 {
        self.af.a * p.x * p.x + (self.af.b + self.af.c) * p.x * p.y + self.af.d * p.y * p.y
    }

    /// `|f(p) - r^2| / r^2`.
    pub fn form_residual(&self, p: Vec2) -> f64 {
        (self.form_value(p) - self.r2).abs() / self.r2
    }
}

/// Orbit of a point with an optional detected period.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub points: Vec<Vec2>,
    pub period: Option<usize>,
    pub theta_over_2pi: f64,
}

const DET_ONE_TOL: f64 = 1e-9;

/// Period search cap; floating-point theta is never exactly commensurable
/// with pi, so periodicity is certified only up to tolerance.
pub const Q_MAX: usize = 10_000;

const ANGLE_TOL: f64 = 1e-9;
const RECURRENCE_TOL: f64 = 1e-9;

pub fn invariant_basis(a: Mat2) -> Result<InvariantBasis, Error> {
    invariant_basis_with_normalization(a, 0.0, 1.0)
}

/// As [`invariant_basis`], with the internal eigenvector multiplied by
/// `scale * exp(i * phase)` first. The resulting ellipses differ only by
/// the common factor; exposed so tests can verify that.
#[doc(hidden)]
pub fn invariant_basis_with_normalization(
    a: Mat2,
    phase: f64,
    scale: f64,
) -> Result<InvariantBasis, Error> {
    match classify(a)? {
        SpectrumClass::ComplexPair { .. } => {}
        SpectrumClass::RealDistinct { .. } => return Err(Error::NotComplexSpectrum),
    }
    let det = a.det();
    if (det - 1.0).abs() > DET_ONE_TOL {
        return Err(Error::DetNotOne { det });
    }
    let cos_t = (a.trace() / 2.0).clamp(-1.0, 1.0);
    let theta = cos_t.acos();
    let eig = Complex64::new(cos_t, theta.sin());

    // (A - eig*I) z = 0, solved from the better-conditioned row
    let row1 = (Complex64::new(a.a, 0.0) - eig).norm_sqr() + a.b * a.b;
    let row2 = a.c * a.c + (Complex64::new(a.d, 0.0) - eig).norm_sqr();
    let (mut z1, mut z2) = if row1 >= row2 {
        (Complex64::new(a.b, 0.0), eig - a.a)
    } else {
        (eig - a.d, Complex64::new(a.c, 0.0))
    };

    // norm sqrt(2), dominant component real and positive; a pure rotation
    // then yields the standard basis (u, v unit) and a unit form matrix
    let n = (z1.norm_sqr() + z2.norm_sqr()).sqrt() / std::f64::consts::SQRT_2;
    z1 /= n;
    z2 /= n;
    let dominant = if z1.norm() >= z2.norm() { z1 } else { z2 };
    let w = dominant.conj() / dominant.norm() * Complex64::from_polar(scale, phase);
    z1 *= w;
    z2 *= w;

    let u = Vec2::new(z1.re, z2.re);
    let mut v = Vec2::new(z1.im, z2.im);

    let build = |u: Vec2, v: Vec2| -> Result<(Mat2, Mat2), Error> {
        let cols = Mat2::from_cols(u, v);
        let n = cols.norm_inf();
        if cols.det().abs() <= 1e-12 * (n * n).max(1.0) {
            return Err(Error::SingularBasis);
        }
        Ok((cols, cols.inverse().expect("determinant checked above")))
    };

    // the eigenvector solve fixes theta only up to sign; pick the v sign
    // that makes the conjugated matrix rot(+theta)
    let (mut cols, mut p) = build(u, v)?;
    let conj = p * a * cols;
    if (conj - Mat2::rotation(theta)).norm_inf() > (conj - Mat2::rotation(-theta)).norm_inf() {
        v = -v;
        (cols, p) = build(u, v)?;
    }
    debug_assert!((p * a * cols - Mat2::rotation(theta)).norm_inf() < 1e-8);

    Ok(InvariantBasis { u, v, theta, p })
}

/// Invariants of the form `|P x|^2` for a change-of-basis matrix `P`.
pub fn conic_invariants(p: Mat2) -> Result<ConicInvariants, Error> {
    let n = p.norm_inf();
    if p.det().abs() <= 1e-12 * (n * n).max(1.0) {
        return Err(Error::SingularBasis);
    }
    let af = p.gram();
    Ok(ConicInvariants { af, s: af.trace(), delta: af.det() })
}

fn ellipse_from_basis(basis: &InvariantBasis, x0: Vec2) -> Result<EllipseReport, Error> {
    if x0.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let r2 = basis.p.apply(x0).norm_sq();
    let ci = conic_invariants(basis.p)?;
    let eig = eigen_symmetric(ci.af).expect("P^t P is symmetric by construction");
    let r = r2.sqrt();
    Ok(EllipseReport {
        af: ci.af,
        s: ci.s,
        delta: ci.delta,
        big_delta: -ci.delta * r2,
        lambda_p: eig.lambda,
        mu_p: eig.mu,
        semi_major: r / eig.lambda.sqrt(),
        semi_minor: r / eig.mu.sqrt(),
        r2,
        axis_major: eig.e1,
        axis_minor: eig.e2,
    })
}

/// The invariant ellipse through `x0`.
pub fn ellipse_through(a: Mat2, x0: Vec2) -> Result<EllipseReport, Error> {
    let basis = invariant_basis(a)?;
    ellipse_from_basis(&basis, x0)
}

/// First `n` points of the orbit of `x0`, with a period `q <= min(n, Q_MAX)`
/// reported when `q * theta` is a multiple of 2*pi within tolerance and the
/// orbit actually recurs.
pub fn orbit(a: Mat2, x0: Vec2, n: usize) -> Result<OrbitReport, Error> {
    let basis = invariant_basis(a)?;
    if x0.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut points = Vec::with_capacity(n);
    let mut x = x0;
    for _ in 0..n {
        points.push(x);
        x = a.apply(x);
    }
    // x now holds A^n x0
    let mut period = None;
    for q in 1..=n.min(Q_MAX) {
        let r = (q as f64 * basis.theta) % TAU;
        if r.min(TAU - r) <= ANGLE_TOL {
            let xq = if q < n { points[q] } else { x };
            if (xq - x0).norm() <= RECURRENCE_TOL * x0.norm() {
                period = Some(q);
                break;
            }
        }
    }
    Ok(OrbitReport { points, period, theta_over_2pi: basis.theta / TAU })
}
