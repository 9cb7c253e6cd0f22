use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

use super::{cr, QubitRegister, HERMITICITY_TOL, NORM_TOL, PSD_TOL, TRACE_TOL};

/// Density operators up to this dimension have their PSD invariant checked
/// through the full spectrum; larger ones through a shifted Cholesky test
/// (feasibility of `rho + tol*I`), which is the same criterion without the
/// O(d^3)-with-large-constant eigensolve.
const PSD_EIG_DIM_LIMIT: usize = 256;

/// Normalized pure state over a qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: QubitRegister,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized (norm within 1e-12 of 1).
    pub fn new(register: QubitRegister, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != register.dimension() {
            return Err(Error::DimensionMismatch {
                expected: register.dimension(),
                got: amplitudes.len(),
            });
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "state vector has non-finite amplitudes".into(),
            ));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self {
            register,
            amplitudes,
        })
    }

    /// Normalizes and wraps; errors on the zero vector.
    pub fn normalized(register: QubitRegister, amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm < 1e-300 {
            return Err(Error::InvalidParameter(
                "cannot normalize the zero vector".into(),
            ));
        }
        Self::new(register, amplitudes / cr(norm))
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(register: QubitRegister, index: usize) -> Result<Self> {
        if index >= register.dimension() {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dimension {}",
                register.dimension()
            )));
        }
        let mut amplitudes = DVector::from_element(register.dimension(), cr(0.0));
        amplitudes[index] = cr(1.0);
        Ok(Self {
            register,
            amplitudes,
        })
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Tensor product, `self` on the high bits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let register =
            QubitRegister::new(self.register.n_qubits() + other.register.n_qubits())?;
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        Self::new(register, amplitudes)
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    register: QubitRegister,
    matrix: DMatrix<C64>,
}

impl DensityOperator {
    /// Validates Hermiticity (entrywise, 1e-10), unit trace (1e-10) and
    /// positive semidefiniteness (eigenvalues >= -1e-10) on construction.
    pub fn new(register: QubitRegister, matrix: DMatrix<C64>) -> Result<Self> {
        let dim = register.dimension();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        check_finite(&matrix)?;
        let herm_dev = hermiticity_deviation(&matrix);
        if herm_dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: herm_dev });
        }
        let trace: C64 = matrix.diagonal().iter().sum();
        let trace_dev = (trace - cr(1.0)).norm();
        if trace_dev > TRACE_TOL {
            return Err(Error::TraceNotOne {
                deviation: trace_dev,
            });
        }
        check_positive(&matrix)?;
        Ok(Self { register, matrix })
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        let matrix = psi.amplitudes() * psi.amplitudes().adjoint();
        Self {
            register: psi.register(),
            matrix,
        }
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.diagonal().iter().sum()
    }

    /// Tr(rho^2); 1 for pure states.
    pub fn purity(&self) -> f64 {
        self.matrix
            .iter()
            .zip(self.matrix.transpose().iter())
            .map(|(a, b)| (a * b).re)
            .sum()
    }
}

/// Hermitian operator (observable or Hamiltonian) on a register.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    register: QubitRegister,
    matrix: DMatrix<C64>,
}

impl HermitianOperator {
    pub fn new(register: QubitRegister, matrix: DMatrix<C64>) -> Result<Self> {
        let dim = register.dimension();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        check_finite(&matrix)?;
        let deviation = hermiticity_deviation(&matrix);
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { register, matrix })
    }

    pub fn zero(register: QubitRegister) -> Self {
        let dim = register.dimension();
        Self {
            register,
            matrix: DMatrix::from_element(dim, dim, cr(0.0)),
        }
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.register != other.register {
            return Err(Error::DimensionMismatch {
                expected: self.register.dimension(),
                got: other.register.dimension(),
            });
        }
        Ok(Self {
            register: self.register,
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            register: self.register,
            matrix: self.matrix.map(|x| x.scale(factor)),
        }
    }

    /// Product of two commuting Hermitian operators (e.g. Paulis on distinct
    /// sites). The caller is responsible for commutativity; Hermiticity of
    /// the product is still validated.
    pub fn commuting_product(&self, other: &Self) -> Result<Self> {
        if self.register != other.register {
            return Err(Error::DimensionMismatch {
                expected: self.register.dimension(),
                got: other.register.dimension(),
            });
        }
        Self::new(self.register, &self.matrix * &other.matrix)
    }
}

pub(crate) fn check_finite(matrix: &DMatrix<C64>) -> Result<()> {
    if matrix
        .iter()
        .any(|x| !x.re.is_finite() || !x.im.is_finite())
    {
        return Err(Error::InvalidParameter(
            "matrix has non-finite entries".into(),
        ));
    }
    Ok(())
}

pub(crate) fn hermiticity_deviation(matrix: &DMatrix<C64>) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..matrix.nrows() {
        for j in i..matrix.ncols() {
            dev = dev.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
        }
    }
    dev
}

fn check_positive(matrix: &DMatrix<C64>) -> Result<()> {
    let dim = matrix.nrows();
    if dim <= PSD_EIG_DIM_LIMIT {
        let min_eig = matrix
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |acc, &x| acc.min(x));
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositive {
                eigenvalue: min_eig,
            });
        }
    } else {
        let shifted = matrix + DMatrix::from_diagonal_element(dim, dim, cr(PSD_TOL));
        if shifted.cholesky().is_none() {
            return Err(Error::NotPositive {
                eigenvalue: -PSD_TOL,
            });
        }
    }
    Ok(())
}
