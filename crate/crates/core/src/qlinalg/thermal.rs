use nalgebra::DMatrix;

use crate::error::{Error, Result};

use super::{cr, hermitian_eig, DensityOperator, HermitianOperator};

/// Bath temperature in energy units. Zero and infinite temperature are
/// distinguished values rather than limits of `Finite`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    /// `kT > 0`.
    Finite(f64),
    /// Maximally mixed limit.
    Infinite,
    /// Equal mixture over the ground eigenspace (projector onto the ground
    /// state when nondegenerate).
    GroundState,
}

impl Temperature {
    /// Interprets a raw `kT` value: positive and finite maps to
    /// `Finite`, `+inf` to `Infinite`, exact zero to `GroundState`.
    pub fn from_kt(kt: f64) -> Result<Self> {
        if kt == 0.0 {
            Ok(Self::GroundState)
        } else if kt.is_infinite() && kt > 0.0 {
            Ok(Self::Infinite)
        } else if kt.is_finite() && kt > 0.0 {
            Ok(Self::Finite(kt))
        } else {
            Err(Error::InvalidParameter(format!(
                "temperature must be positive, zero (ground state) or +inf, got {kt}"
            )))
        }
    }
}

/// Gibbs state `exp(-H/kT) / Z`.
///
/// Eigenvalues are shifted by the ground energy before exponentiation so the
/// largest Boltzmann weight is exactly 1 and nothing overflows.
pub fn thermal_state(hamiltonian: &HermitianOperator, temperature: Temperature) -> Result<DensityOperator> {
    let dim = hamiltonian.register().dimension();
    let weights_and_basis = match temperature {
        Temperature::Infinite => {
            let m = DMatrix::from_diagonal_element(dim, dim, cr(1.0 / dim as f64));
            return DensityOperator::new(hamiltonian.register(), m);
        }
        Temperature::Finite(kt) => {
            if kt <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "kT must be > 0, got {kt}"
                )));
            }
            let (w, v) = hermitian_eig(hamiltonian);
            let ground = w[0];
            let weights: Vec<f64> = w.iter().map(|&e| (-(e - ground) / kt).exp()).collect();
            (weights, v)
        }
        Temperature::GroundState => {
            let (w, v) = hermitian_eig(hamiltonian);
            let ground = w[0];
            // degeneracy detected on an absolute scale tied to the spectrum
            let tol = 1e-10 * (1.0 + w[dim - 1].abs().max(ground.abs()));
            let weights: Vec<f64> = w
                .iter()
                .map(|&e| if e - ground <= tol { 1.0 } else { 0.0 })
                .collect();
            (weights, v)
        }
    };
    let (weights, basis) = weights_and_basis;
    let z: f64 = weights.iter().sum();
    let mut scaled = basis.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= cr(weights[k] / z);
    }
    let rho = scaled * basis.adjoint();
    DensityOperator::new(hamiltonian.register(), rho)
}
