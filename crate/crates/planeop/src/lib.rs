//! Geometric characterization of invertible 2x2 real linear operators.
//!
//! The library classifies the spectrum of an operator, computes its polar
//! decomposition `A = O B`, bounds the rotation angle between a vector and
//! its image, estimates the mean of those bounds by Monte Carlo over the
//! complex-spectrum coefficient domain, and traces the invariant ellipses
//! of determinant-one operators.

pub mod angles;
pub mod error;
pub mod matrix;
pub mod meanangle;
pub mod polar;
pub mod trajectory;

pub use error::Error;
pub use matrix::{classify, eigen_symmetric, signed_angle, Mat2, SpectrumClass, Vec2};
pub use polar::{operator_norm, polar_decompose, PolarForm};
