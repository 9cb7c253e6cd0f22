use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("register must hold at least one qubit")]
    EmptyRegister,
    #[error("register of {n_qubits} qubits exceeds the supported maximum of {max}")]
    RegisterTooLarge { n_qubits: usize, max: usize },
    #[error("qubit {site} out of range for a register of {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state vector norm deviates from 1 by {deviation:.3e}")]
    NotNormalized { deviation: f64 },
    #[error("matrix is not Hermitian: max |A - A^\u{2020}| entry is {deviation:.3e}")]
    NotHermitian { deviation: f64 },
    #[error("density operator trace deviates from 1 by {deviation:.3e}")]
    TraceNotOne { deviation: f64 },
    #[error("density operator is not positive semidefinite (witness eigenvalue {eigenvalue:.3e})")]
    NotPositive { eigenvalue: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
