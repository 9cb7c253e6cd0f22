//! Dense complex linear algebra over qubit registers.
//!
//! Everything downstream (tangles, decoherence models, Monte-Carlo audits)
//! is built from the handful of primitives in this module: Pauli embeddings,
//! Hermitian eigendecomposition, unitary time evolution, partial traces,
//! thermal states and the von Neumann entropy.
//!
//! Basis convention, fixed once for the whole crate: basis index `b` of an
//! `n`-qubit register runs over `0..2^n`; bit `k` of `b`, counted from the
//! most significant bit, is the state of qubit `k`; bit value 0 is spin-up,
//! 1 is spin-down. Qubit 0 is the central spin whenever one is present and
//! qubits `1..=N` are the bath spins.

mod eig;
mod functions;
mod pauli;
mod register;
mod state;
mod thermal;

pub use eig::{evolve_unitary, hermitian_eig, Propagator};
pub use functions::{
    expectation, expectation_pure, partial_trace, reduced_from_pure, von_neumann_entropy,
};
pub use pauli::{pauli_embed, pauli_matrix, PauliAxis};
pub use register::QubitRegister;
pub use state::{DensityOperator, HermitianOperator, StateVector};
pub use thermal::{thermal_state, Temperature};

use num_complex::Complex64 as C64;

/// Largest register the dense representation supports (`2^13` amplitudes).
pub const MAX_QUBITS: usize = 13;

/// Entrywise Hermiticity tolerance used by all operator constructors.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Trace tolerance for density-operator construction.
pub const TRACE_TOL: f64 = 1e-10;
/// Most negative admissible density-operator eigenvalue.
pub const PSD_TOL: f64 = 1e-10;
/// State-vector normalization tolerance.
pub const NORM_TOL: f64 = 1e-12;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}
