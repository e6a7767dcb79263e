use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("measurement branch {outcome} has probability {probability:e}; no conditional state")]
    ZeroProbabilityBranch { outcome: usize, probability: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("outcome index {index} out of range for an auxiliary of dimension {dim}")]
    OutcomeOutOfRange { index: usize, dim: usize },

    #[error("unsupported code specification: {0}")]
    UnsupportedSpec(String),

    #[error("ambiguous eigenvalue clustering: gap {gap:e} is below {threshold:e}")]
    AmbiguousClustering { gap: f64, threshold: f64 },

    #[error("no canonical basis for {0}")]
    NoCanonicalBasis(String),

    #[error("canonical basis vector {label} failed validation: {reason}")]
    CanonicalBasisInvalid { label: String, reason: String },

    #[error("noise rate {0} is outside [0, 1]")]
    RateOutOfRange(f64),

    #[error("subspace {0} is empty")]
    EmptySubspace(usize),

    #[error("expected {expected} archetype coefficients, got {found}")]
    BadCoefficientCount { expected: usize, found: usize },

    #[error("archetype for subspace {index} leaves the subspace (residual {residual:e})")]
    ArchetypeNotInSubspace { index: usize, residual: f64 },

    #[error("integration step {dt} with |H| = {norm} exceeds the stability bound")]
    StepTooLarge { dt: f64, norm: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
