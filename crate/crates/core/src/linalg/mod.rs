//! Dense complex linear algebra for 2- to 16-dimensional operators.

mod eigen;
mod matrix;
pub mod pauli;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use matrix::{kron, ComplexMatrix, MAX_DIM};
pub use state::{partial_transpose, DensityMatrix, Factor, PureState, DOWN, UP};
