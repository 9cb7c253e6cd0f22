use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::Result;

use super::{c, cr, DensityOperator, HermitianOperator, QubitRegister, StateVector};

/// Full eigendecomposition of a Hermitian operator.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvalues sorted ascending
/// and the unitary of eigenvector columns reordered to match, so that
/// `A = V diag(w) V^dagger`.
///
/// Runs two diagonalization passes: the tridiagonal QL pass alone can leave
/// an eigenvector residual around 1e-10 on unlucky inputs, while a second
/// pass in the computed eigenbasis lands at machine precision.
pub fn hermitian_eig(op: &HermitianOperator) -> (DVector<f64>, DMatrix<C64>) {
    let first = op.matrix().clone().symmetric_eigen();
    let in_basis = first.eigenvectors.adjoint() * op.matrix() * &first.eigenvectors;
    let second = in_basis.symmetric_eigen();
    let vectors = first.eigenvectors * second.eigenvectors;
    let values = second.eigenvalues;

    let dim = values.len();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let eigenvalues = DVector::from_iterator(dim, order.iter().map(|&i| values[i]));
    let mut eigenvectors = DMatrix::from_element(dim, dim, cr(0.0));
    for (target, &source) in order.iter().enumerate() {
        eigenvectors
            .column_mut(target)
            .copy_from(&vectors.column(source));
    }
    (eigenvalues, eigenvectors)
}

/// Cached spectral decomposition of a Hamiltonian, reused across a time grid.
///
/// `U(t) = V exp(-i w t) V^dagger`; building the propagator once and asking
/// it for many times avoids rediagonalizing.
#[derive(Debug, Clone)]
pub struct Propagator {
    register: QubitRegister,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<C64>,
}

impl Propagator {
    pub fn new(hamiltonian: &HermitianOperator) -> Self {
        let (eigenvalues, eigenvectors) = hermitian_eig(hamiltonian);
        Self {
            register: hamiltonian.register(),
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn register(&self) -> QubitRegister {
        self.register
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<C64> {
        &self.eigenvectors
    }

    /// Phase factors `exp(-i w_k t)`.
    pub fn phases(&self, t: f64) -> DVector<C64> {
        self.eigenvalues.map(|w| c(0.0, -w * t).exp())
    }

    /// Dense `U(t) = exp(-i H t)`.
    pub fn unitary(&self, t: f64) -> DMatrix<C64> {
        let phases = self.phases(t);
        let mut scaled = self.eigenvectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= phases[k];
        }
        scaled * self.eigenvectors.adjoint()
    }

    /// `U(t) |psi>` through two matrix-vector products.
    pub fn evolve_state(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        let mut coeffs = self.eigenvectors.adjoint() * psi.amplitudes();
        let phases = self.phases(t);
        for (k, x) in coeffs.iter_mut().enumerate() {
            *x *= phases[k];
        }
        StateVector::new(self.register, &self.eigenvectors * coeffs)
    }

    /// `U(t) rho U(t)^dagger`, validated on return.
    pub fn evolve_density(&self, rho: &DensityOperator, t: f64) -> Result<DensityOperator> {
        let in_eigenbasis = self.to_eigenbasis(rho.matrix());
        let rotated = self.apply_phases(&in_eigenbasis, t);
        DensityOperator::new(self.register, self.from_eigenbasis(&rotated))
    }

    /// `V^dagger M V`.
    pub fn to_eigenbasis(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        self.eigenvectors.adjoint() * m * &self.eigenvectors
    }

    /// `V M V^dagger`.
    pub fn from_eigenbasis(&self, m: &DMatrix<C64>) -> DMatrix<C64> {
        &self.eigenvectors * m * self.eigenvectors.adjoint()
    }

    /// Conjugates an eigenbasis matrix by `exp(-i w t)`:
    /// entry `(j, k)` picks up `exp(-i (w_j - w_k) t)`.
    pub fn apply_phases(&self, in_eigenbasis: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
        let phases = self.phases(t);
        DMatrix::from_fn(in_eigenbasis.nrows(), in_eigenbasis.ncols(), |j, k| {
            phases[j] * in_eigenbasis[(j, k)] * phases[k].conj()
        })
    }
}

/// One-shot `exp(-i H t)`. Prefer holding a [`Propagator`] when evaluating a
/// whole time grid for the same Hamiltonian.
pub fn evolve_unitary(hamiltonian: &HermitianOperator, t: f64) -> DMatrix<C64> {
    Propagator::new(hamiltonian).unitary(t)
}

#[cfg(test)]
mod tests {
    use nalgebra::DMatrix;

    use super::*;
    use crate::qlinalg::{pauli_embed, pauli_matrix, PauliAxis};

    fn reg(n: usize) -> QubitRegister {
        QubitRegister::new(n).unwrap()
    }

    fn max_abs(m: &DMatrix<C64>) -> f64 {
        m.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    fn random_hermitian(register: QubitRegister, seed: u64) -> HermitianOperator {
        // splitmix64-ish stream, deterministic
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = s;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            ((z ^ (z >> 31)) as f64 / u64::MAX as f64) * 2.0 - 1.0
        };
        let dim = register.dimension();
        let raw = DMatrix::from_fn(dim, dim, |_, _| c(next(), next()));
        let herm = (&raw + raw.adjoint()).map(|x| x.scale(0.5));
        HermitianOperator::new(register, herm).unwrap()
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let op = HermitianOperator::new(reg(2), DMatrix::identity(4, 4)).unwrap();
        let (w, _) = hermitian_eig(&op);
        for x in w.iter() {
            assert!((x - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn sigma_x_spectrum() {
        let op = HermitianOperator::new(reg(1), pauli_matrix(PauliAxis::X)).unwrap();
        let (w, _) = hermitian_eig(&op);
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let op = random_hermitian(reg(3), 11);
        let (w, v) = hermitian_eig(&op);
        let spectral_radius = w.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        let lambda = DMatrix::from_diagonal(&w.map(cr));
        let recon = &v * lambda * v.adjoint();
        let residual = max_abs(&(recon - op.matrix()));
        assert!(residual < 1e-11 * (spectral_radius + 1.0), "residual {residual}");
        let ortho = max_abs(&(v.adjoint() * &v - DMatrix::identity(8, 8)));
        assert!(ortho < 1e-11);
    }

    #[test]
    fn propagator_at_zero_is_identity() {
        let op = random_hermitian(reg(2), 3);
        let u = evolve_unitary(&op, 0.0);
        assert!(max_abs(&(u - DMatrix::identity(4, 4))) < 1e-12);
    }

    #[test]
    fn sigma_z_at_pi_gives_minus_identity() {
        let op = pauli_embed(PauliAxis::Z, 0, reg(1)).unwrap();
        let u = evolve_unitary(&op, std::f64::consts::PI);
        assert!((u[(0, 0)] - cr(-1.0)).norm() < 1e-12);
        assert!((u[(1, 1)] - cr(-1.0)).norm() < 1e-12);
        assert!(u[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn group_law_on_random_16x16() {
        let op = random_hermitian(reg(4), 7);
        let p = Propagator::new(&op);
        let lhs = p.unitary(0.3 + 0.7);
        let rhs = p.unitary(0.3) * p.unitary(0.7);
        assert!(max_abs(&(lhs - rhs)) < 1e-10);
    }

    #[test]
    fn unitarity_and_norm_preservation() {
        let op = random_hermitian(reg(3), 5);
        let p = Propagator::new(&op);
        let u = p.unitary(1.234);
        assert!(max_abs(&(u.adjoint() * &u - DMatrix::identity(8, 8))) < 1e-10);

        let psi = StateVector::basis_state(reg(3), 5).unwrap();
        let evolved = p.evolve_state(&psi, 0.77).unwrap();
        let norm_sq: f64 = evolved.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() < 1e-10);
    }
}
