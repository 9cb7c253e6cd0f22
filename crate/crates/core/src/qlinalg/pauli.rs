use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::Result;

use super::{c, cr, HermitianOperator, QubitRegister};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// The 2x2 Pauli matrix for `axis` in the spin-up/spin-down basis.
pub fn pauli_matrix(axis: PauliAxis) -> DMatrix<C64> {
    match axis {
        PauliAxis::X => DMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]),
        PauliAxis::Y => DMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)]),
        PauliAxis::Z => DMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]),
    }
}

/// `I (x) ... (x) sigma_axis (x) ... (x) I` with the Pauli at qubit `site`.
///
/// Built column-by-column instead of by repeated Kronecker products; each
/// column has exactly one nonzero entry.
pub fn pauli_embed(
    axis: PauliAxis,
    site: usize,
    register: QubitRegister,
) -> Result<HermitianOperator> {
    register.check_site(site)?;
    let dim = register.dimension();
    let mask = register.mask(site);
    let mut m = DMatrix::from_element(dim, dim, cr(0.0));
    for col in 0..dim {
        match axis {
            PauliAxis::X => m[(col ^ mask, col)] = cr(1.0),
            PauliAxis::Y => {
                // sigma_y |up> = i |down>, sigma_y |down> = -i |up>
                if col & mask == 0 {
                    m[(col | mask, col)] = c(0.0, 1.0);
                } else {
                    m[(col & !mask, col)] = c(0.0, -1.0);
                }
            }
            PauliAxis::Z => {
                m[(col, col)] = if col & mask == 0 { cr(1.0) } else { cr(-1.0) };
            }
        }
    }
    HermitianOperator::new(register, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg(n: usize) -> QubitRegister {
        QubitRegister::new(n).unwrap()
    }

    #[test]
    fn z_on_first_qubit_of_two() {
        let op = pauli_embed(PauliAxis::Z, 0, reg(2)).unwrap();
        let diag: Vec<f64> = op.matrix().diagonal().iter().map(|x| x.re).collect();
        assert_eq!(diag, vec![1.0, 1.0, -1.0, -1.0]);
    }

    #[test]
    fn x_on_single_qubit() {
        let op = pauli_embed(PauliAxis::X, 0, reg(1)).unwrap();
        assert_eq!(op.matrix(), &pauli_matrix(PauliAxis::X));
    }

    #[test]
    fn embedded_paulis_are_involutory() {
        for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
            let op = pauli_embed(axis, 1, reg(2)).unwrap();
            let sq = op.matrix() * op.matrix();
            let diff = (&sq - DMatrix::identity(4, 4)).map(|x| x.norm()).max();
            assert!(diff < 1e-15, "{axis:?}^2 != I");
        }
    }

    #[test]
    fn distinct_site_paulis_commute() {
        let register = reg(3);
        let a = pauli_embed(PauliAxis::X, 0, register).unwrap();
        let b = pauli_embed(PauliAxis::Y, 2, register).unwrap();
        let comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
        assert!(comm.map(|x| x.norm()).max() < 1e-12);
    }

    #[test]
    fn site_out_of_range_is_rejected() {
        assert!(pauli_embed(PauliAxis::X, 2, reg(2)).is_err());
    }
}
