//! Plane vectors, 2x2 matrices and spectrum classification.
//!
//! All angle conventions are counterclockwise-positive with values in
//! `(-pi, pi]`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;

/// A point or direction in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product; positive when `o` lies
    /// counterclockwise from `self`.
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    /// Unit vector at angle `theta` from the positive x-axis.
    pub fn unit(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A 2x2 real matrix with row-major entries `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn from_cols(c0: Vec2, c1: Vec2) -> Self {
        Self::new(c0.x, c1.x, c0.y, c1.y)
    }

    /// Counterclockwise rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn det(self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(self) -> Self {
        Self::new(self.a, self.c, self.b, self.d)
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    /// Induced infinity norm (maximum absolute row sum).
    pub fn norm_inf(self) -> f64 {
        (self.a.abs() + self.b.abs()).max(self.c.abs() + self.d.abs())
    }

    pub fn inverse(self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 {
            return None;
        }
        Some(Self::new(self.d / det, -self.b / det, -self.c / det, self.a / det))
    }

    /// The Gram matrix `A^t A`, symmetric by construction.
    pub fn gram(self) -> Self {
        self.transpose() * self
    }

    /// Rank-one matrix `u v^t`.
    pub fn outer(u: Vec2, v: Vec2) -> Self {
        Self::new(u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y)
    }

    pub fn finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, k: f64) -> Mat2 {
        Mat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Counterclockwise-positive angle from `x` to `y` in `(-pi, pi]`.
///
/// Computed from the two-argument arctangent of (cross, dot); the arccos of
/// the normalized dot product alone loses the sign and conditioning near 0
/// and pi.
pub fn signed_angle(x: Vec2, y: Vec2) -> Result<f64, Error> {
    if x.norm() == 0.0 || y.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(x.cross(y).atan2(x.dot(y)))
}

/// Spectrum of an invertible 2x2 operator with distinct eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectrumClass {
    /// Conjugate pair `re +- i*im` with `im > 0`.
    ComplexPair { re: f64, im: f64 },
    /// Distinct real eigenvalues ordered `lambda1 < lambda2`, with unit
    /// eigenvectors and the acute angle `beta` between the eigenlines.
    RealDistinct {
        lambda1: f64,
        lambda2: f64,
        u1: Vec2,
        u2: Vec2,
        beta: f64,
    },
}

const EPS_DISC: f64 = 1e-10;

pub(crate) fn det_epsilon(a: Mat2) -> f64 {
    let n = a.norm_inf();
    1e-12 * (n * n).max(1.0)
}

fn disc_scale(a: Mat2) -> f64 {
    let tr = a.trace();
    (tr * tr).max(a.det().abs()).max(1.0)
}

pub(crate) fn check_invertible(a: Mat2) -> Result<(), Error> {
    let det = a.det();
    if !a.finite() || det.abs() <= det_epsilon(a) {
        return Err(Error::SingularMatrix { det });
    }
    Ok(())
}

/// Normalize and fix the sign so the dominant component is positive.
fn canonical_unit(v: Vec2) -> Vec2 {
    let u = v.normalized();
    let flip = if u.x.abs() >= u.y.abs() { u.x < 0.0 } else { u.y < 0.0 };
    if flip {
        -u
    } else {
        u
    }
}

/// Unit eigenvector of `a` for the real eigenvalue `lambda`.
fn real_eigenvector(a: Mat2, lambda: f64) -> Vec2 {
    let v1 = Vec2::new(a.b, lambda - a.a);
    let v2 = Vec2::new(lambda - a.d, a.c);
    canonical_unit(if v1.norm_sq() >= v2.norm_sq() { v1 } else { v2 })
}

/// Classify the spectrum of an invertible operator by the sign of the
/// characteristic discriminant.
///
/// A repeated eigenvalue is reported as [`Error::DegenerateSpectrum`]: the
/// extremal-angle results require distinct eigenvalues.
pub fn classify(a: Mat2) -> Result<SpectrumClass, Error> {
    check_invertible(a)?;
    let tr = a.trace();
    let det = a.det();
    let disc = tr * tr - 4.0 * det;
    // (a+d)^2 - 4(ad-bc) and (a-d)^2 + 4bc are the same polynomial.
    let alt = (a.a - a.d) * (a.a - a.d) + 4.0 * a.b * a.c;
    let ulp_scale = (tr * tr)
        .abs()
        .max(4.0 * (a.a * a.d).abs())
        .max(4.0 * (a.b * a.c).abs())
        .max(1.0);
    debug_assert!((disc - alt).abs() <= 8.0 * f64::EPSILON * ulp_scale);

    let scale = disc_scale(a);
    if disc.abs() <= EPS_DISC * scale {
        return Err(Error::DegenerateSpectrum { lambda: tr / 2.0 });
    }
    if disc < 0.0 {
        return Ok(SpectrumClass::ComplexPair {
            re: tr / 2.0,
            im: (-disc).sqrt() / 2.0,
        });
    }
    let sq = disc.sqrt();
    let lambda1 = (tr - sq) / 2.0;
    let lambda2 = (tr + sq) / 2.0;
    let u1 = real_eigenvector(a, lambda1);
    let u2 = real_eigenvector(a, lambda2);
    let beta = u1.dot(u2).abs().clamp(0.0, 1.0).acos();
    Ok(SpectrumClass::RealDistinct { lambda1, lambda2, u1, u2, beta })
}

/// Eigendecomposition of a symmetric 2x2 matrix, `lambda <= mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricEigen {
    pub lambda: f64,
    pub mu: f64,
    pub e1: Vec2,
    pub e2: Vec2,
}

/// Closed-form eigendecomposition of a symmetric matrix.
///
/// Returns an orthonormal pair `e1, e2` with `S e1 = lambda e1` and
/// `S e2 = mu e2`, `lambda <= mu`. For a repeated eigenvalue the standard
/// basis is returned.
pub fn eigen_symmetric(s: Mat2) -> Result<SymmetricEigen, Error> {
    let scale = s.norm_inf();
    if (s.b - s.c).abs() > 8.0 * f64::EPSILON * scale.max(1.0) {
        return Err(Error::NotSymmetric);
    }
    let p = s.a;
    let r = s.d;
    let q = 0.5 * (s.b + s.c);
    let mid = 0.5 * (p + r);
    let half = 0.5 * (p - r);
    let h = half.hypot(q);
    if h <= f64::EPSILON * scale {
        // isotropic: every direction is an eigenvector
        return Ok(SymmetricEigen {
            lambda: mid,
            mu: mid,
            e1: Vec2::new(1.0, 0.0),
            e2: Vec2::new(0.0, 1.0),
        });
    }
    let lambda = mid - h;
    let mu = mid + h;
    let v1 = Vec2::new(q, lambda - p);
    let v2 = Vec2::new(lambda - r, q);
    let e1 = canonical_unit(if v1.norm_sq() >= v2.norm_sq() { v1 } else { v2 });
    let e2 = canonical_unit(Vec2::new(-e1.y, e1.x));
    Ok(SymmetricEigen { lambda, mu, e1, e2 })
}
