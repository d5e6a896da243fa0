//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by the symplectic and state-construction routines.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum CoreError {
    /// A basis descriptor violates its pairing invariants.
    #[error("malformed basis: {0}")]
    BasisMalformed(String),

    /// Matrix dimensions do not match the basis or the expected shape.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A matrix required to be symmetric is not, within tolerance.
    #[error("matrix not symmetric (max deviation {max_deviation:.3e})")]
    NonSymmetric { max_deviation: f64 },

    /// Eigenvalue moduli of 2i*Omega*V failed to pair up.
    #[error("symplectic spectrum moduli failed to pair (gap {gap:.3e} at value {value:.6e})")]
    SpectrumPairing { gap: f64, value: f64 },

    /// The supplied transformation does not preserve the symplectic form.
    #[error("matrix is not symplectic (|S Omega S^T - Omega| = {deviation:.3e})")]
    NonSymplectic { deviation: f64 },

    /// A positive-definite matrix was required.
    #[error("matrix not positive definite (min eigenvalue {min_eig:.3e})")]
    NotPositiveDefinite { min_eig: f64 },

    /// The two-step standard-form reduction left a residual above tolerance.
    #[error("standard-form reduction did not converge (residual {residual:.3e})")]
    ReductionFailed { residual: f64 },

    /// The basis does not contain the requested particle.
    #[error("unknown particle index {0}")]
    UnknownParticle(usize),

    /// A state or operation parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two routes that must agree disagreed beyond tolerance.
    #[error("internal consistency failure in {context}: |a - b| = {deviation:.3e}")]
    ConsistencyError { context: String, deviation: f64 },

    /// The quadrature convergence gate failed.
    #[error("quadrature did not converge (achieved delta {achieved:.3e}, required {required:.3e})")]
    QuadratureConvergence { achieved: f64, required: f64 },

    /// The shifted log-negativity argument left the valid domain.
    #[error("log-negativity argument non-positive ({0:.6e})")]
    NonPositiveArgument(f64),

    /// A search failed to bracket an interior minimum.
    #[error("no interior minimum in the search window ({0})")]
    NoInteriorMinimum(String),

    /// File or stream parse failure for the variance-matrix formats.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
