//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("hermitian symmetrization defect {defect:.3e} exceeds limit {limit:.3e}")]
    NotHermitian { defect: f64, limit: f64 },

    #[error("operator is not idempotent: defect {defect:.3e}")]
    NotIdempotent { defect: f64 },

    #[error("projector eigenvalue {value:.6} is not in {{0, 1}}")]
    EigenvalueNotBinary { value: f64 },

    #[error("operator trace {trace:.6} is not 1")]
    TraceNotOne { trace: f64 },

    #[error("operator has rank {rank}, expected {expected}")]
    WrongRank { rank: usize, expected: usize },

    #[error("rank {rank} out of range 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error("operator is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    NotPositive { min_eig: f64 },

    #[error("basis is not orthonormal: Gram deviation {defect:.3e}")]
    NotOrthonormal { defect: f64 },

    #[error("operator is not an effect (0 <= T <= I): eigenvalues in [{min_eig:.6}, {max_eig:.6}]")]
    NotEffect { min_eig: f64, max_eig: f64 },

    #[error("tangent vectors have different base points")]
    BasePointMismatch,

    #[error("cross-check failed in {context}: deviation {deviation:.3e} exceeds {limit:.3e}")]
    CertificationFailure {
        context: &'static str,
        deviation: f64,
        limit: f64,
    },

    #[error("least-squares design matrix is rank deficient (min singular value {min_sv:.3e}); draw more samples")]
    RankDeficientDesign { min_sv: f64 },

    #[error("eigendecomposition did not converge")]
    EigenFailure,

    #[error("density does not integrate to 1: estimate {mean:.6} +/- {std_error:.3e}")]
    NonNormalizedDensity { mean: f64, std_error: f64 },

    #[error("pair is not compatible (commutator norm {commutator_norm:.3e}); use the operator-lattice path")]
    IncompatiblePair { commutator_norm: f64 },

    #[error("element family of size {size} exceeds cap {cap}")]
    FamilyTooLarge { size: usize, cap: usize },

    #[error("integration step {dt:.3e} exceeds stability bound {bound:.3e}")]
    StepTooLarge { dt: f64, bound: f64 },

    #[error("projection defect {defect:.3e} exceeds {limit:.3e}; reduce the step size")]
    StepRejected { defect: f64, limit: f64 },

    #[error("unknown tolerance name `{0}`")]
    UnknownTolerance(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
