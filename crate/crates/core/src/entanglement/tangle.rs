use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::qlinalg::{pauli_matrix, reduced_from_pure, DensityOperator, PauliAxis, StateVector};

use super::clamp_tangle;

/// Imaginary parts of the rho rho~ spectrum above this signal breakdown.
const EIG_IMAG_TOL: f64 = 1e-8;
/// Spectrum entries below this are exact zeros of a rank-deficient product
/// seen through eigensolver noise; snapping them avoids sqrt amplifying
/// eigensolver backward error into ~1e-7 concurrence error. Density-operator
/// products are bounded by 1, so an absolute threshold is scale-correct, and
/// it sits an order above the Schur deflation tolerance below.
const EIG_ZERO_SNAP: f64 = 1e-12;

/// Deflation tolerance for the Schur iteration. Machine epsilon stalls on
/// the near-degenerate spectra thermal pair states produce (the shifted
/// iteration plateaus around 1e-14 relative); 1e-13 converges everywhere
/// while keeping eigenvalue backward error far below the snap threshold.
const SCHUR_EPS: f64 = 1e-13;

/// Spin-flipped two-qubit matrix `(sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)`,
/// conjugation taken in the computational basis.
pub fn spin_flip(rho: &DensityOperator) -> Result<DMatrix<C64>> {
    if rho.register().n_qubits() != 2 {
        return Err(Error::InvalidParameter(format!(
            "spin flip needs a two-qubit register, got {}",
            rho.register().n_qubits()
        )));
    }
    let yy = pauli_matrix(PauliAxis::Y).kronecker(&pauli_matrix(PauliAxis::Y));
    Ok(&yy * rho.matrix().map(|x| x.conj()) * &yy)
}

/// General (non-Hermitian-capable) spectrum of the 4x4 product `rho rho~`.
///
/// The matrix is scaled to unit max entry before the Schur iteration and the
/// iteration count is bounded; an exactly zero product (any product state)
/// short-circuits to a zero spectrum, since the unscaled zero matrix would
/// feed NaN into the iteration.
fn product_spectrum(product: &DMatrix<C64>) -> Result<[C64; 4]> {
    let scale = product.iter().map(|x| x.norm()).fold(0.0f64, f64::max);
    if scale < f64::MIN_POSITIVE {
        return Ok([C64::new(0.0, 0.0); 4]);
    }
    let scaled = product.map(|x| x / scale);
    let schur = scaled.try_schur(SCHUR_EPS, 100_000).ok_or_else(|| {
        Error::NumericalBreakdown("Schur iteration did not converge on rho * rho~".into())
    })?;
    let triangular = schur.unpack().1;
    let mut out = [C64::new(0.0, 0.0); 4];
    for k in 0..4 {
        out[k] = triangular[(k, k)] * scale;
    }
    Ok(out)
}

/// Tangle (squared concurrence) of a two-qubit state, possibly mixed.
///
/// The four Wootters numbers are the descending square roots of the spectrum
/// of `rho rho~`, obtained from a general eigenvalue routine; the tangle is
/// `max(0, l1 - l2 - l3 - l4)^2`.
pub fn tangle_mixed_pair(rho: &DensityOperator) -> Result<f64> {
    let flipped = spin_flip(rho)?;
    let product = rho.matrix() * flipped;
    let eigenvalues = product_spectrum(&product)?;
    let mut lambdas = [0.0f64; 4];
    for (k, ev) in eigenvalues.iter().enumerate() {
        if ev.im.abs() >= EIG_IMAG_TOL {
            return Err(Error::NumericalBreakdown(format!(
                "rho * rho~ eigenvalue has imaginary part {:.3e}",
                ev.im
            )));
        }
        let re = ev.re.max(0.0);
        lambdas[k] = if re < EIG_ZERO_SNAP { 0.0 } else { re.sqrt() };
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let concurrence = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    clamp_tangle(concurrence * concurrence, "tangle_mixed_pair")
}

/// Tangle of a pure state across the cut `{cut_qubit} | rest`:
/// `4 det rho_cut`.
pub fn tangle_pure_cut(psi: &StateVector, cut_qubit: usize) -> Result<f64> {
    psi.register().check_site(cut_qubit)?;
    let reduced = reduced_from_pure(psi, &[cut_qubit])?;
    let m = reduced.matrix();
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    clamp_tangle(4.0 * det, "tangle_pure_cut")
}

/// Residual three-party tangle of a pure three-qubit state, evaluated from
/// the cut at qubit 0 (the central spin).
pub fn three_tangle(psi: &StateVector) -> Result<f64> {
    three_tangle_from_cut(psi, 0)
}

/// Three-tangle evaluated from an arbitrary single-qubit cut; the result is
/// permutation invariant, which makes the choice of cut a cross-check rather
/// than a parameter.
pub fn three_tangle_from_cut(psi: &StateVector, cut: usize) -> Result<f64> {
    if psi.register().n_qubits() != 3 {
        return Err(Error::InvalidParameter(format!(
            "three-tangle needs a three-qubit register, got {}",
            psi.register().n_qubits()
        )));
    }
    psi.register().check_site(cut)?;
    let others: Vec<usize> = (0..3).filter(|&q| q != cut).collect();
    let total = tangle_pure_cut(psi, cut)?;
    let pair_a = tangle_mixed_pair(&reduced_from_pure(psi, &[cut, others[0]])?)?;
    let pair_b = tangle_mixed_pair(&reduced_from_pure(psi, &[cut, others[1]])?)?;
    let residual = total - pair_a - pair_b;
    if residual < -1e-9 {
        return Err(Error::NumericalBreakdown(format!(
            "three-tangle {residual} below zero beyond roundoff (monogamy violated numerically)"
        )));
    }
    Ok(residual.max(0.0))
}
