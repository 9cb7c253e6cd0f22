use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::qlinalg::{cr, QubitRegister, StateVector};

/// Amplitudes of an `N+1`-qubit W-class state: `a[i]` multiplies the branch
/// with the central spin up and only bath spin `i+1` down, `c` the branch
/// with the central spin down and the bath all-up, `d` the all-up product
/// branch.
#[derive(Debug, Clone, PartialEq)]
pub struct WStateParams {
    a: Vec<f64>,
    c: f64,
    d: f64,
}

impl WStateParams {
    pub fn new(a: Vec<f64>, c: f64, d: f64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParameter(
                "W-class state needs at least one bath amplitude".into(),
            ));
        }
        if a.iter().any(|&x| x < 0.0) || c < 0.0 || d < 0.0 {
            return Err(Error::InvalidParameter(
                "W-class amplitudes must be non-negative".into(),
            ));
        }
        let norm_sq: f64 = a.iter().map(|x| x * x).sum::<f64>() + c * c + d * d;
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "W-class amplitudes must be normalized, squared sum is {norm_sq}"
            )));
        }
        Ok(Self { a, c, d })
    }

    /// Symmetric parameters `a_i = a` with `d` absorbing the remaining
    /// normalization budget.
    pub fn symmetric(n_bath: usize, a: f64, c: f64) -> Result<Self> {
        let d_sq = 1.0 - n_bath as f64 * a * a - c * c;
        if d_sq < -1e-12 {
            return Err(Error::InvalidParameter(format!(
                "symmetric W-class amplitudes over-normalized by {:.3e}",
                -d_sq
            )));
        }
        Self::new(vec![a; n_bath], c, d_sq.max(0.0).sqrt())
    }

    pub fn n_bath(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Materializes the W-class state on `N+1` qubits (central spin at qubit 0).
pub fn w_state_vector(params: &WStateParams) -> Result<StateVector> {
    let n_bath = params.n_bath();
    let register = QubitRegister::new(n_bath + 1)?;
    let mut amps = DVector::from_element(register.dimension(), cr(0.0));
    for (i, &ai) in params.a.iter().enumerate() {
        // central up, bath spin i+1 down
        amps[register.mask(i + 1)] = cr(ai);
    }
    amps[register.mask(0)] = cr(params.c); // central down, bath all up
    amps[0] = cr(params.d); // everything up
    StateVector::new(register, amps)
}

/// Closed-form tangles of a W-class state: the pairwise bath matrix
/// `tau[i][j] = 4 a_i^2 a_j^2` (zero diagonal) and the system-bath tangle
/// `4 c^2 sum_i a_i^2`.
pub fn w_tangles(params: &WStateParams) -> (DMatrix<f64>, f64) {
    let n = params.n_bath();
    let mut pairwise = DMatrix::from_element(n, n, 0.0);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairwise[(i, j)] =
                    4.0 * params.a[i] * params.a[i] * params.a[j] * params.a[j];
            }
        }
    }
    let sum_a_sq: f64 = params.a.iter().map(|x| x * x).sum();
    let tau_sb = 4.0 * params.c * params.c * sum_a_sq;
    (pairwise, tau_sb)
}
