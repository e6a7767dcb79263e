//! Numerical tolerances shared by the engine, the self-test and the test suites.

/// Entrywise bound on `|A - A†|` for a matrix to count as Hermitian.
pub const HERMITIAN: f64 = 1e-12;

/// Bound used when asserting that assembled Hamiltonians are Hermitian.
pub const ASSEMBLED_HERMITIAN: f64 = 1e-13;

/// Orthonormality of eigenvector and basis sets.
pub const ORTHONORMAL: f64 = 1e-10;

/// Residual `|H v - λ v|` of an eigenpair, relative to `max(1, |H|)`.
pub const EIGEN_RESIDUAL: f64 = 1e-10;

/// Reconstruction error of `V diag(λ) V†`, relative to `max(1, |H|_max)`.
pub const EIGEN_ROUND_TRIP: f64 = 1e-9;

/// `|U†U - I|_max` for propagators.
pub const UNITARY: f64 = 1e-10;

/// Unit norm of kets.
pub const NORMALIZED: f64 = 1e-12;

/// Trace of a density matrix.
pub const TRACE: f64 = 1e-10;

/// Smallest admissible eigenvalue of a density matrix.
pub const POSITIVITY: f64 = -1e-10;

/// Sum of measurement-outcome probabilities.
pub const PROBABILITY_SUM: f64 = 1e-10;

/// Branches below this probability carry no conditional state.
pub const ZERO_BRANCH: f64 = 1e-14;

/// Branches below this probability are excluded from fidelity statistics.
pub const NEGLIGIBLE_BRANCH: f64 = 1e-12;

/// Kraus completeness `|Σ K†K - I|_max`.
pub const KRAUS_COMPLETENESS: f64 = 1e-12;

/// Default clustering tolerance for degenerate eigenvalues, in units of J.
pub const GROUP: f64 = 1e-8;

/// Inter-cluster gaps must exceed this multiple of the grouping tolerance.
pub const GROUP_GAP_FACTOR: f64 = 10.0;

/// Membership of a ket in a subspace, `|v - Π v|`.
pub const SUBSPACE_MEMBERSHIP: f64 = 1e-10;

/// Population above which a basis vector counts as contributing.
pub const CONTRIBUTING_POPULATION: f64 = 1e-12;

/// Bound on `dt |H|` for the fixed-step master-equation integrator.
pub const RK4_STABILITY: f64 = 0.05;

/// Trace drift permitted over one master-equation integration.
pub const LINDBLAD_TRACE: f64 = 1e-8;
