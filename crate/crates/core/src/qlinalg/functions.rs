use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

use super::{DensityOperator, HermitianOperator, QubitRegister, StateVector};

/// Maps `(kept sub-register index, traced sub-register index)` pairs onto
/// full-register basis indices under the crate bit convention.
struct TraceIndexer {
    kept_dim: usize,
    traced_dim: usize,
    index: Vec<usize>,
}

impl TraceIndexer {
    fn new(register: QubitRegister, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::InvalidParameter(
                "partial trace must keep at least one qubit".into(),
            ));
        }
        for &q in keep {
            register.check_site(q)?;
        }
        let mut seen = vec![false; register.n_qubits()];
        for &q in keep {
            if seen[q] {
                return Err(Error::InvalidParameter(format!(
                    "duplicate qubit {q} in partial-trace keep set"
                )));
            }
            seen[q] = true;
        }
        let traced: Vec<usize> = (0..register.n_qubits()).filter(|q| !seen[*q]).collect();
        let kept_dim = 1usize << keep.len();
        let traced_dim = 1usize << traced.len();
        let mut index = vec![0usize; kept_dim * traced_dim];
        for a in 0..kept_dim {
            for e in 0..traced_dim {
                let mut b = 0usize;
                for (pos, &q) in keep.iter().enumerate() {
                    if (a >> (keep.len() - 1 - pos)) & 1 == 1 {
                        b |= register.mask(q);
                    }
                }
                for (pos, &q) in traced.iter().enumerate() {
                    if (e >> (traced.len() - 1 - pos)) & 1 == 1 {
                        b |= register.mask(q);
                    }
                }
                index[a * traced_dim + e] = b;
            }
        }
        Ok(Self {
            kept_dim,
            traced_dim,
            index,
        })
    }

    #[inline]
    fn full_index(&self, kept: usize, traced: usize) -> usize {
        self.index[kept * self.traced_dim + traced]
    }
}

/// Partial trace of `rho` down to the qubits in `keep` (in the given order:
/// qubit `i` of the result is `keep[i]` of the input).
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let indexer = TraceIndexer::new(rho.register(), keep)?;
    let m = rho.matrix();
    let mut out = DMatrix::from_element(indexer.kept_dim, indexer.kept_dim, C64::new(0.0, 0.0));
    for a in 0..indexer.kept_dim {
        for b in 0..indexer.kept_dim {
            let mut acc = C64::new(0.0, 0.0);
            for e in 0..indexer.traced_dim {
                acc += m[(indexer.full_index(a, e), indexer.full_index(b, e))];
            }
            out[(a, b)] = acc;
        }
    }
    DensityOperator::new(QubitRegister::new(keep.len())?, out)
}

/// Partial trace of `|psi><psi|` down to `keep`, without materializing the
/// full projector.
pub fn reduced_from_pure(psi: &StateVector, keep: &[usize]) -> Result<DensityOperator> {
    let indexer = TraceIndexer::new(psi.register(), keep)?;
    let amps = psi.amplitudes();
    let mut out = DMatrix::from_element(indexer.kept_dim, indexer.kept_dim, C64::new(0.0, 0.0));
    for a in 0..indexer.kept_dim {
        for b in 0..=a {
            let mut acc = C64::new(0.0, 0.0);
            for e in 0..indexer.traced_dim {
                acc += amps[indexer.full_index(a, e)] * amps[indexer.full_index(b, e)].conj();
            }
            out[(a, b)] = acc;
            out[(b, a)] = acc.conj();
        }
    }
    DensityOperator::new(QubitRegister::new(keep.len())?, out)
}

/// Von Neumann entropy in bits: `-sum p log2 p` over the spectrum, with
/// eigenvalues clamped into [0, 1] and `0 log 0 := 0`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    let eigenvalues = rho.matrix().clone().symmetric_eigen().eigenvalues;
    let mut entropy = 0.0;
    for &p in eigenvalues.iter() {
        let p = p.clamp(0.0, 1.0);
        if p > 0.0 {
            entropy -= p * p.log2();
        }
    }
    entropy
}

/// `Tr(rho A)`, real part (the observable expectation value).
pub fn expectation(rho: &DensityOperator, op: &HermitianOperator) -> Result<f64> {
    if rho.register() != op.register() {
        return Err(Error::DimensionMismatch {
            expected: rho.register().dimension(),
            got: op.register().dimension(),
        });
    }
    let r = rho.matrix();
    let a = op.matrix();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..r.nrows() {
        for k in 0..r.ncols() {
            acc += r[(i, k)] * a[(k, i)];
        }
    }
    Ok(acc.re)
}

/// `<psi| A |psi>`.
pub fn expectation_pure(psi: &StateVector, op: &HermitianOperator) -> Result<f64> {
    if psi.register() != op.register() {
        return Err(Error::DimensionMismatch {
            expected: psi.register().dimension(),
            got: op.register().dimension(),
        });
    }
    let ap = op.matrix() * psi.amplitudes();
    Ok(psi.amplitudes().dotc(&ap).re)
}

#[cfg(test)]
mod tests {
    use nalgebra::DVector;

    use super::*;
    use crate::qlinalg::cr;

    fn reg(n: usize) -> QubitRegister {
        QubitRegister::new(n).unwrap()
    }

    fn bell() -> StateVector {
        let h = cr(1.0 / 2f64.sqrt());
        StateVector::new(
            reg(2),
            DVector::from_column_slice(&[h, cr(0.0), cr(0.0), h]),
        )
        .unwrap()
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let rho = DensityOperator::from_pure(&bell());
        let reduced = partial_trace(&rho, &[0]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 0.5 } else { 0.0 };
                assert!((reduced.matrix()[(i, j)] - cr(expect)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn product_state_reduces_to_first_factor() {
        let a = DVector::from_column_slice(&[cr(0.6), cr(0.8)]);
        let psi_a = StateVector::new(reg(1), a).unwrap();
        let psi_b = StateVector::basis_state(reg(1), 1).unwrap();
        let joint = psi_a.tensor(&psi_b).unwrap();
        let rho = DensityOperator::from_pure(&joint);
        let reduced = partial_trace(&rho, &[0]).unwrap();
        let expected = DensityOperator::from_pure(&psi_a);
        let diff = (reduced.matrix() - expected.matrix())
            .map(|x| x.norm())
            .max();
        assert!(diff < 1e-14);
    }

    #[test]
    fn ghz_pair_is_classical_mixture() {
        let h = cr(1.0 / 2f64.sqrt());
        let mut amps = DVector::from_element(8, cr(0.0));
        amps[0] = h;
        amps[7] = h;
        let ghz = StateVector::new(reg(3), amps).unwrap();
        let pair = reduced_from_pure(&ghz, &[0, 1]).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (0, 0) || (i, j) == (3, 3) { 0.5 } else { 0.0 };
                assert!((pair.matrix()[(i, j)] - cr(expect)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn tracing_all_qubits_is_identity_map() {
        let psi = bell();
        let rho = DensityOperator::from_pure(&psi);
        let same = partial_trace(&rho, &[0, 1]).unwrap();
        let diff = (same.matrix() - rho.matrix()).map(|x| x.norm()).max();
        assert_eq!(diff, 0.0);
    }

    #[test]
    fn invalid_keep_sets_are_rejected() {
        let rho = DensityOperator::from_pure(&bell());
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
    }

    #[test]
    fn entropy_of_pure_mixed_and_maximally_mixed() {
        let pure = DensityOperator::from_pure(&StateVector::basis_state(reg(2), 1).unwrap());
        assert!(von_neumann_entropy(&pure).abs() < 1e-12);

        let half = DMatrix::from_diagonal_element(2, 2, cr(0.5));
        let rho = DensityOperator::new(reg(1), half).unwrap();
        assert!((von_neumann_entropy(&rho) - 1.0).abs() < 1e-12);

        let quarter = DMatrix::from_diagonal_element(4, 4, cr(0.25));
        let rho = DensityOperator::new(reg(2), quarter).unwrap();
        assert!((von_neumann_entropy(&rho) - 2.0).abs() < 1e-12);
    }
}
