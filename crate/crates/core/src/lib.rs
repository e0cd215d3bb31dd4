//! Two-qubit system–meter states under decoherence.
//!
//! A qubit `A` travels a two-path interferometer and is monitored by a meter
//! qubit `B`. Optional environment qubits couple to the system or the meter.
//! This crate builds those states, reduces them to the shared `A⊗B` density
//! matrix and evaluates the quantities that tie which-way complementarity to
//! nonlocality:
//!
//! * fringe visibility and predictability ([`complementarity`]),
//! * correlation tensor, maximal Bell-CHSH value and a brute-force CHSH
//!   optimizer ([`nonlocality`]),
//! * partial-transpose separability, von Neumann entropies and mutual
//!   information ([`entanglement`]).
//!
//! Every closed-form relation is paired with a matrix-level computation so the
//! two can be checked against each other.

pub mod complementarity;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod nonlocality;
pub mod scenario;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, Factor, PureState};
pub use scenario::{Scenario, ScenarioParams};
