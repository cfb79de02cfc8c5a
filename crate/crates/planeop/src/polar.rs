//! Polar decomposition `A = O B` and the length analysis it supports.

use crate::error::Error;
use crate::matrix::{check_invertible, eigen_symmetric, Mat2, Vec2};

/// Polar decomposition of an invertible matrix with positive determinant:
/// `A = O B` with `O` a rotation by `alpha` and `B` symmetric positive
/// definite with eigenvalues `sqrt_lambda <= sqrt_mu`.
#[derive(Clone, Copy, Debug)]
pub struct PolarForm {
    /// Rotation angle of the orthogonal factor, in `(-pi, pi]`.
    pub alpha: f64,
    /// Orthogonal factor `O = A B^-1`.
    pub orthogonal: Mat2,
    /// Positive factor, the symmetric square root of `A^t A`.
    pub positive: Mat2,
    pub sqrt_lambda: f64,
    pub sqrt_mu: f64,
    /// Orthonormal eigenvectors of `B`, paired with `sqrt_lambda` and
    /// `sqrt_mu` respectively.
    pub e1: Vec2,
    pub e2: Vec2,
}

/// Polar decomposition via the eigendecomposition of `A^t A`.
///
/// `B` is assembled as `e1 sqrt(lambda) e1^t + e2 sqrt(mu) e2^t`. The
/// rotation angle comes from the trace and antisymmetric parts of
/// `A = O B`: the first column of `O` is proportional to
/// `(a + d, c - b)`, which stays accurate where forming `A B^-1`
/// explicitly would lose orthogonality on near-singular input. Matrices
/// with `det < 0` carry a reflection factor and are rejected.
pub fn polar_decompose(a: Mat2) -> Result<PolarForm, Error> {
    check_invertible(a)?;
    let det = a.det();
    if det < 0.0 {
        return Err(Error::ReflectionCase { det });
    }
    let eig = eigen_symmetric(a.gram()).expect("A^t A is symmetric by construction");
    let s2 = eig.mu.sqrt();
    // lambda = mid - h cancels badly when A is near singular;
    // lambda * mu = det(A)^2 does not
    let s1 = det / s2;
    let p1 = Mat2::outer(eig.e1, eig.e1);
    let p2 = Mat2::outer(eig.e2, eig.e2);
    let positive = p1 * s1 + p2 * s2;
    let alpha = (a.c - a.b).atan2(a.a + a.d);
    let orthogonal = Mat2::rotation(alpha);
    Ok(PolarForm {
        alpha,
        orthogonal,
        positive,
        sqrt_lambda: s1,
        sqrt_mu: s2,
        e1: eig.e1,
        e2: eig.e2,
    })
}

/// Which side of the spectral boundary `cos(alpha)` falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSide {
    /// `|cos alpha|` below the bound: complex spectrum.
    Below,
    /// `|cos alpha|` above the bound: real spectrum.
    Above,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundCheck {
    pub side: BoundSide,
    /// The bound `2 (lambda mu)^(1/4) / (sqrt(lambda) + sqrt(mu))`.
    pub bound: f64,
}

/// Compare `|cos alpha|` against the spectral bound.
///
/// The side must agree with [`crate::matrix::classify`]: below means complex
/// spectrum, above means real. Landing on the boundary (a repeated
/// eigenvalue) is reported as indeterminate.
pub fn cos_alpha_bound_check(p: &PolarForm) -> Result<BoundCheck, Error> {
    let bound = 2.0 * (p.sqrt_lambda * p.sqrt_mu).sqrt() / (p.sqrt_lambda + p.sqrt_mu);
    let c = p.alpha.cos().abs();
    if (c - bound).abs() <= 1e-10 {
        return Err(Error::IndeterminateBound);
    }
    let side = if c < bound { BoundSide::Below } else { BoundSide::Above };
    Ok(BoundCheck { side, bound })
}

/// Operator norm `max(sqrt(lambda), sqrt(mu))`.
pub fn operator_norm(a: Mat2) -> f64 {
    let eig = eigen_symmetric(a.gram()).expect("A^t A is symmetric by construction");
    eig.mu.sqrt()
}

/// Bounds `[min(lambda, mu), max(lambda, mu)]` on the squared length ratio
/// `|Ax|^2 / |x|^2`.
pub fn length_ratio_bounds(a: Mat2) -> Result<(f64, f64), Error> {
    check_invertible(a)?;
    if a.det() < 0.0 {
        return Err(Error::ReflectionCase { det: a.det() });
    }
    let eig = eigen_symmetric(a.gram()).expect("A^t A is symmetric by construction");
    Ok((eig.lambda, eig.mu))
}

/// Directions whose length is preserved by the operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsometricDirections {
    /// `lambda = mu = 1`: the operator is a rotation, every direction works.
    AllDirections,
    /// Exactly one eigenvalue of `A^t A` equals 1.
    Single(Vec2),
    /// The generic `lambda < 1 < mu` case: two distinct direction lines.
    Pair(Vec2, Vec2),
}

/// Unit directions with `|Ax| = |x|`, present iff
/// `min(lambda, mu) <= 1 <= max(lambda, mu)`.
pub fn isometric_directions(a: Mat2) -> Result<Option<IsometricDirections>, Error> {
    check_invertible(a)?;
    if a.det() < 0.0 {
        return Err(Error::ReflectionCase { det: a.det() });
    }
    let eig = eigen_symmetric(a.gram()).expect("A^t A is symmetric by construction");
    let (lambda, mu) = (eig.lambda, eig.mu);
    let eps = 1e-12 * mu.max(1.0);
    let lambda_one = (lambda - 1.0).abs() <= eps;
    let mu_one = (mu - 1.0).abs() <= eps;
    Ok(if lambda_one && mu_one {
        Some(IsometricDirections::AllDirections)
    } else if lambda_one {
        Some(IsometricDirections::Single(eig.e1))
    } else if mu_one {
        Some(IsometricDirections::Single(eig.e2))
    } else if lambda < 1.0 && 1.0 < mu {
        // in the eigenframe: x2^2 / x1^2 = (lambda - 1) / (1 - mu)
        let s = ((lambda - 1.0) / (1.0 - mu)).sqrt();
        let d1 = (eig.e1 + eig.e2 * s).normalized();
        let d2 = (eig.e1 - eig.e2 * s).normalized();
        Some(IsometricDirections::Pair(d1, d2))
    } else {
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{classify, SpectrumClass};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn close(a: Mat2, b: Mat2, tol: f64) -> bool {
        (a - b).norm_inf() <= tol
    }

    #[test]
    fn decompose_scaled_rotation() {
        let a = Mat2::new(1.0, -1.0, 1.0, 1.0);
        let p = polar_decompose(a).unwrap();
        assert!((p.alpha - FRAC_PI_4).abs() < 1e-15);
        assert!(close(p.orthogonal, Mat2::rotation(FRAC_PI_4), 1e-15));
        assert!(close(p.positive, Mat2::identity() * SQRT_2, 1e-15));
        assert!((p.sqrt_lambda - SQRT_2).abs() < 1e-15);
        assert!((p.sqrt_mu - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn decompose_diagonal() {
        let a = Mat2::new(2.0, 0.0, 0.0, 3.0);
        let p = polar_decompose(a).unwrap();
        assert_eq!(p.alpha, 0.0);
        assert!(close(p.orthogonal, Mat2::identity(), 1e-15));
        assert!(close(p.positive, a, 1e-15));
    }

    #[test]
    fn decompose_rotation_times_diagonal() {
        let a = Mat2::new(0.0, -2.0, 1.0, 0.0);
        let p = polar_decompose(a).unwrap();
        assert!((p.alpha - FRAC_PI_2).abs() < 1e-15);
        assert!(close(p.positive, Mat2::new(1.0, 0.0, 0.0, 2.0), 1e-15));
        assert!(close(p.orthogonal, Mat2::rotation(FRAC_PI_2), 1e-15));
        assert_eq!(p.sqrt_lambda, 1.0);
        assert_eq!(p.sqrt_mu, 2.0);
    }

    #[test]
    fn decompose_rejects_reflection() {
        let err = polar_decompose(Mat2::new(1.0, 0.0, 0.0, -1.0)).unwrap_err();
        assert!(matches!(err, Error::ReflectionCase { .. }));
    }

    #[test]
    fn bound_check_complex_side() {
        let p = polar_decompose(Mat2::new(0.0, -2.0, 1.0, 0.0)).unwrap();
        let chk = cos_alpha_bound_check(&p).unwrap();
        assert!((chk.bound - 2.0 * SQRT_2 / 3.0).abs() < 1e-14);
        assert_eq!(chk.side, BoundSide::Below);
    }

    #[test]
    fn bound_check_real_side() {
        let p = polar_decompose(Mat2::new(2.0, 0.0, 0.0, 3.0)).unwrap();
        let chk = cos_alpha_bound_check(&p).unwrap();
        assert!((chk.bound - 2.0 * 6.0_f64.sqrt() / 5.0).abs() < 1e-14);
        assert_eq!(chk.side, BoundSide::Above);
    }

    #[test]
    fn bound_check_conformal() {
        // k * rot(theta): bound is exactly 1, any |cos theta| < 1 is below
        let a = Mat2::rotation(1.0) * 2.5;
        let p = polar_decompose(a).unwrap();
        let chk = cos_alpha_bound_check(&p).unwrap();
        assert!((chk.bound - 1.0).abs() < 1e-12);
        assert_eq!(chk.side, BoundSide::Below);
    }

    #[test]
    fn norm_examples() {
        assert!((operator_norm(Mat2::new(2.0, 0.0, 0.0, 3.0)) - 3.0).abs() < 1e-15);
        assert!((operator_norm(Mat2::new(1.0, -1.0, 1.0, 1.0)) - SQRT_2).abs() < 1e-15);
        assert!((operator_norm(Mat2::new(0.0, -2.0, 1.0, 0.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn length_ratio_examples() {
        assert_eq!(length_ratio_bounds(Mat2::new(2.0, 0.0, 0.0, 3.0)).unwrap(), (4.0, 9.0));
        let (lo, hi) = length_ratio_bounds(Mat2::rotation(0.7)).unwrap();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
        assert_eq!(length_ratio_bounds(Mat2::new(0.0, -2.0, 1.0, 0.0)).unwrap(), (1.0, 4.0));
    }

    #[test]
    fn isometric_generic_pair() {
        let a = Mat2::new(0.5, 0.0, 0.0, 2.0);
        match isometric_directions(a).unwrap().unwrap() {
            IsometricDirections::Pair(d1, d2) => {
                for d in [d1, d2] {
                    assert!((a.apply(d).norm() - 1.0).abs() < 1e-12);
                    // lines through +-(2, 1)/sqrt(5) in the eigenframe
                    assert!((d.y.abs() / d.x.abs() - 0.5).abs() < 1e-12);
                }
            }
            other => panic!("expected a pair, got {other:?}"),
        }
    }

    #[test]
    fn isometric_absent_when_expanding() {
        assert_eq!(isometric_directions(Mat2::new(2.0, 0.0, 0.0, 3.0)).unwrap(), None);
    }

    #[test]
    fn isometric_boundary_single() {
        let a = Mat2::new(1.0, 0.0, 0.0, 2.0);
        assert_eq!(
            isometric_directions(a).unwrap(),
            Some(IsometricDirections::Single(Vec2::new(1.0, 0.0)))
        );
    }

    #[test]
    fn isometric_rotation_all_directions() {
        assert_eq!(
            isometric_directions(Mat2::rotation(0.3)).unwrap(),
            Some(IsometricDirections::AllDirections)
        );
    }

    fn entry() -> impl Strategy<Value = f64> {
        -3.0..3.0f64
    }

    proptest! {
        #[test]
        fn reconstruction_and_orthogonality(a in entry(), b in entry(), c in entry(), d in entry()) {
            let m = Mat2::new(a, b, c, d);
            prop_assume!(m.det() > 1e-3);
            let p = polar_decompose(m).unwrap();
            let o = p.orthogonal;
            prop_assert!(((o * p.positive) - m).norm_inf() <= 1e-10 * m.norm_inf());
            prop_assert!((o.transpose() * o - Mat2::identity()).norm_inf() <= 1e-10);
            prop_assert!((o.det() - 1.0).abs() <= 1e-10);
            prop_assert!((p.positive * p.positive - m.gram()).norm_inf() <= 1e-10 * m.gram().norm_inf());
            prop_assert!(p.sqrt_lambda > 0.0);
        }

        #[test]
        fn bound_side_matches_classification(a in entry(), b in entry(), c in entry(), d in entry()) {
            let m = Mat2::new(a, b, c, d);
            prop_assume!(m.det() > 1e-3);
            if let Ok(class) = classify(m) {
                let p = polar_decompose(m).unwrap();
                if let Ok(chk) = cos_alpha_bound_check(&p) {
                    let complex = matches!(class, SpectrumClass::ComplexPair { .. });
                    prop_assert_eq!(chk.side == BoundSide::Below, complex);
                }
            }
        }

        #[test]
        fn length_ratio_sandwich(a in entry(), b in entry(), c in entry(), d in entry(), theta in 0.0..std::f64::consts::TAU) {
            let m = Mat2::new(a, b, c, d);
            prop_assume!(m.det() > 1e-3);
            let (lo, hi) = length_ratio_bounds(m).unwrap();
            let ratio = m.apply(Vec2::unit(theta)).norm_sq();
            prop_assert!(ratio >= lo - 1e-12 * hi.max(1.0));
            prop_assert!(ratio <= hi + 1e-12 * hi.max(1.0));
        }
    }
}
