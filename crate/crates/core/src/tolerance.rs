//! Numerical tolerances shared across modules.

/// Exact-structure checks: Hermiticity, trace, normalization.
pub const EXACT: f64 = 1e-12;

/// Hermiticity precondition accepted by the eigensolver.
pub const HERMITIAN_INPUT: f64 = 1e-10;

/// Smallest eigenvalue still treated as nonnegative.
pub const PSD: f64 = 1e-10;

/// Eigenvalues below this make an entropy evaluation a contract error.
pub const ENTROPY_NEGATIVE: f64 = 1e-8;

/// Jacobi sweep stops once the off-diagonal Frobenius norm drops below this.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-14;

pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Band around the local-realistic bound `B = 2` that still counts as
/// "no violation".
pub const CHSH_BOUND: f64 = 1e-9;
