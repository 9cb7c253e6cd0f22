//! Entanglement sharing in symmetric spin baths.
//!
//! A central spin coupled to a permutation-symmetric bath of `N` spin-1/2
//! particles cannot entangle with the bath beyond a bound set by the pairwise
//! entanglement *inside* the bath. This crate computes that bound, verifies
//! it by Monte-Carlo sampling over the symmetric subspace, and reproduces two
//! exactly solvable decoherence models in which the effect shows up as a
//! suppression of decoherence:
//!
//! - [`qlinalg`]: dense complex linear algebra over qubit registers
//!   (Pauli embeddings, eigendecomposition, evolution, partial traces,
//!   thermal states, entropy);
//! - [`entanglement`]: tangles, W-class states and the sharing bounds;
//! - [`zurek`]: the pure-dephasing central-spin model, closed forms plus a
//!   state-vector oracle;
//! - [`tessieri_wilkie`]: the self-interacting bath model with a thermal
//!   initial state and Rabi-oscillation trajectories;
//! - [`sampler`]: Haar sampling on the central-spin x Dicke subspace and the
//!   deterministic, parallel inequality audit;
//! - [`checks`]: the named verification suites shared by the CLI and the
//!   acceptance tests.

pub mod checks;
pub mod entanglement;
pub mod error;
pub mod qlinalg;
pub mod sampler;
pub mod tessieri_wilkie;
pub mod zurek;

pub use error::{Error, Result};
pub use qlinalg::{
    DensityOperator, HermitianOperator, Propagator, QubitRegister, StateVector, Temperature,
};

pub use entanglement::{Regime, SharingBound, WStateParams};
pub use sampler::{SharingAudit, SymmetricBasis};
pub use tessieri_wilkie::{TWConfig, TWTrajectory};
pub use zurek::{BathKind, ZurekConfig};
