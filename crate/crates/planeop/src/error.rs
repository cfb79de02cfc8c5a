use thiserror::Error;

/// Errors shared across the analysis entry points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular (det = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("degenerate spectrum: repeated eigenvalue {lambda}")]
    DegenerateSpectrum { lambda: f64 },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("det < 0 ({det}): reflection case is out of scope")]
    ReflectionCase { det: f64 },
    #[error("cos(alpha) sits on the spectral boundary")]
    IndeterminateBound,
    #[error("eigenvalues must satisfy 0 < lambda1 < lambda2")]
    InvalidEigenvalues,
    #[error("beta must lie in (0, pi/2]")]
    InvalidBeta,
    #[error("operator does not have a complex spectrum")]
    NotComplexSpectrum,
    #[error("det must equal 1 (got {det}); pre-normalize by 1/sqrt(det)")]
    DetNotOne { det: f64 },
    #[error("basis vectors are linearly dependent")]
    SingularBasis,
    #[error("point lies outside the admissible domain")]
    OutsideDomain,
    #[error("need at least {min} samples, got {got}")]
    InsufficientSamples { got: u64, min: u64 },
}
