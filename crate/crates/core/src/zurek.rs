//! Pure-dephasing central-spin model.
//!
//! The coupling `H = (g/2) sigma_z^(S) sum_k sigma_z^(B_k)` commutes with
//! every `sigma_z`, so the central spin's populations are frozen and its
//! coherence decays by the overlap of the two conditionally evolved bath
//! branches. Everything has a closed form; [`simulate_zurek_exact`] is the
//! state-vector oracle that re-derives the same quantities from the full
//! register.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::entanglement::{sharing_bound, tangle_mixed_pair, tangle_pure_cut};
use crate::error::{Error, Result};
use crate::qlinalg::{
    cr, pauli_embed, reduced_from_pure, von_neumann_entropy, DensityOperator, HermitianOperator,
    PauliAxis, Propagator, QubitRegister, StateVector, MAX_QUBITS,
};

/// Initial bath state family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathKind {
    /// Every bath spin in the same pure state `alpha |down> + beta |up>`.
    Product { alpha: C64, beta: C64 },
    /// Single-excitation (W-type) bath `a/sqrt(N) sum_k |k-th spin up, rest
    /// down> + d |all down>` with real non-negative `a`, `d`.
    Entangled { a: f64, d: f64 },
}

/// Full parameter set of the dephasing model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZurekConfig {
    pub n_bath: usize,
    pub g: f64,
    pub chi: C64,
    pub gamma: C64,
    pub bath: BathKind,
}

impl ZurekConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_bath == 0 {
            return Err(Error::InvalidParameter("need at least one bath spin".into()));
        }
        if !self.g.is_finite() {
            return Err(Error::InvalidParameter("coupling g must be finite".into()));
        }
        let central = self.chi.norm_sqr() + self.gamma.norm_sqr();
        if (central - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "|chi|^2 + |gamma|^2 = {central}, expected 1"
            )));
        }
        match self.bath {
            BathKind::Product { alpha, beta } => {
                let norm = alpha.norm_sqr() + beta.norm_sqr();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "|alpha|^2 + |beta|^2 = {norm}, expected 1"
                    )));
                }
            }
            BathKind::Entangled { a, d } => {
                if a < 0.0 || d < 0.0 {
                    return Err(Error::InvalidParameter(
                        "entangled-bath amplitudes must be non-negative".into(),
                    ));
                }
                let norm = a * a + d * d;
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "a^2 + d^2 = {norm}, expected 1"
                    )));
                }
            }
        }
        Ok(())
    }

    fn full_register(&self) -> Result<QubitRegister> {
        if self.n_bath + 1 > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                n_qubits: self.n_bath + 1,
                max: MAX_QUBITS,
            });
        }
        QubitRegister::new(self.n_bath + 1)
    }
}

/// `H_SB = (g/2) sum_k sigma_z^(S) sigma_z^(B_k)` on the full register;
/// there are no free terms, so the operator is diagonal.
pub fn zurek_hamiltonian(cfg: &ZurekConfig) -> Result<HermitianOperator> {
    cfg.validate()?;
    let register = cfg.full_register()?;
    let central_z = pauli_embed(PauliAxis::Z, 0, register)?;
    let mut total = HermitianOperator::zero(register);
    for k in 1..=cfg.n_bath {
        let bath_z = pauli_embed(PauliAxis::Z, k, register)?;
        total = total.add(&central_z.commuting_product(&bath_z)?)?;
    }
    Ok(total.scale(cfg.g / 2.0))
}

/// Complex decoherence factor `r(t) = <B_up(t)|B_down(t)>`.
pub fn decoherence_factor(cfg: &ZurekConfig, t: f64) -> C64 {
    let g = cfg.g;
    match cfg.bath {
        BathKind::Product { alpha, beta } => {
            let per_spin = alpha.norm_sqr() * C64::new(0.0, -g * t).exp()
                + beta.norm_sqr() * C64::new(0.0, g * t).exp();
            per_spin.powu(cfg.n_bath as u32)
        }
        BathKind::Entangled { a, d } => {
            let n = cfg.n_bath as f64;
            C64::new(0.0, -g * t * n).exp()
                * (cr(a * a) * C64::new(0.0, 2.0 * g * t).exp() + cr(d * d))
        }
    }
}

/// `|r(t)|^2` for a product bath:
/// `[ |alpha|^4 + |beta|^4 + 2 |alpha|^2 |beta|^2 cos(2gt) ]^N`.
pub fn r2_product(cfg: &ZurekConfig, t: f64) -> Result<f64> {
    cfg.validate()?;
    let BathKind::Product { alpha, beta } = cfg.bath else {
        return Err(Error::InvalidParameter(
            "r2_product needs a product bath".into(),
        ));
    };
    let (a2, b2) = (alpha.norm_sqr(), beta.norm_sqr());
    let per_spin = a2 * a2 + b2 * b2 + 2.0 * a2 * b2 * (2.0 * cfg.g * t).cos();
    Ok(per_spin.clamp(0.0, 1.0).powi(cfg.n_bath as i32))
}

/// `|r(t)|^2` for the entangled bath:
/// `a^4 + d^4 + 2 a^2 d^2 cos(2gt)`, independent of `N`.
pub fn r2_entangled(cfg: &ZurekConfig, t: f64) -> Result<f64> {
    cfg.validate()?;
    let BathKind::Entangled { a, d } = cfg.bath else {
        return Err(Error::InvalidParameter(
            "r2_entangled needs an entangled bath".into(),
        ));
    };
    let (a2, d2) = (a * a, d * d);
    Ok((a2 * a2 + d2 * d2 + 2.0 * a2 * d2 * (2.0 * cfg.g * t).cos()).clamp(0.0, 1.0))
}

/// `|r(t)|^2` for either bath kind.
pub fn r2(cfg: &ZurekConfig, t: f64) -> Result<f64> {
    match cfg.bath {
        BathKind::Product { .. } => r2_product(cfg, t),
        BathKind::Entangled { .. } => r2_entangled(cfg, t),
    }
}

/// Closed-form reduced state of the central spin: populations are frozen at
/// `(|gamma|^2, |chi|^2)` and the coherence is `chi gamma* r(t)`.
pub fn reduced_central_state(cfg: &ZurekConfig, t: f64) -> Result<DensityOperator> {
    cfg.validate()?;
    let r = decoherence_factor(cfg, t);
    let register = QubitRegister::new(1)?;
    let mut m = nalgebra::DMatrix::from_element(2, 2, cr(0.0));
    m[(0, 0)] = cr(cfg.gamma.norm_sqr());
    m[(1, 1)] = cr(cfg.chi.norm_sqr());
    m[(1, 0)] = cfg.chi * cfg.gamma.conj() * r;
    m[(0, 1)] = m[(1, 0)].conj();
    DensityOperator::new(register, m)
}

/// System-bath tangle `4 |chi|^2 |gamma|^2 (1 - |r(t)|^2)`.
pub fn zurek_tangle(cfg: &ZurekConfig, t: f64) -> Result<f64> {
    let r2 = r2(cfg, t)?;
    Ok(4.0 * cfg.chi.norm_sqr() * cfg.gamma.norm_sqr() * (1.0 - r2))
}

/// Pairwise tangle between bath spins of the entangled bath, `4 a^4 / N^2`
/// (the single-excitation state normalizes its branch amplitudes by
/// `1/sqrt(N)`, and a pairwise tangle of amplitudes `a_i a_j` scales as
/// `4 a_i^2 a_j^2`). Constant in time because the dephasing coupling flips
/// no spins.
pub fn entangled_bath_pairwise_tangle(cfg: &ZurekConfig) -> Result<f64> {
    cfg.validate()?;
    let BathKind::Entangled { a, .. } = cfg.bath else {
        return Err(Error::InvalidParameter(
            "pairwise bath tangle needs an entangled bath".into(),
        ));
    };
    if cfg.n_bath < 2 {
        return Err(Error::InvalidParameter(
            "pairwise bath tangle needs at least two bath spins".into(),
        ));
    }
    let n = cfg.n_bath as f64;
    Ok(4.0 * a.powi(4) / (n * n))
}

/// Initial bath state as a dense vector on the bath register.
pub fn bath_state(cfg: &ZurekConfig) -> Result<StateVector> {
    cfg.validate()?;
    let register = QubitRegister::new(cfg.n_bath)?;
    match cfg.bath {
        BathKind::Product { alpha, beta } => {
            // beta on spin-up (bit 0), alpha on spin-down (bit 1), per spin
            let mut amps = DVector::from_column_slice(&[beta, alpha]);
            for _ in 1..cfg.n_bath {
                amps = amps.kronecker(&DVector::from_column_slice(&[beta, alpha]));
            }
            StateVector::new(register, amps)
        }
        BathKind::Entangled { a, d } => {
            let dim = register.dimension();
            let all_down = dim - 1;
            let mut amps = DVector::from_element(dim, cr(0.0));
            let branch = a / (cfg.n_bath as f64).sqrt();
            for k in 0..cfg.n_bath {
                amps[all_down & !register.mask(k)] = cr(branch);
            }
            amps[all_down] += cr(d);
            StateVector::new(register, amps)
        }
    }
}

/// Separable initial state `(chi |down> + gamma |up>)_S (x) |B(0)>`.
pub fn initial_state(cfg: &ZurekConfig) -> Result<StateVector> {
    let central = StateVector::new(
        QubitRegister::new(1)?,
        DVector::from_column_slice(&[cfg.gamma, cfg.chi]),
    )?;
    central.tensor(&bath_state(cfg)?)
}

/// One grid point of the state-vector oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZurekSample {
    pub t: f64,
    pub r2: f64,
    pub tau_sb: f64,
    /// Pairwise tangle of bath spins 1 and 2; 0 when the bath has one spin.
    pub tau_b: f64,
    /// Central-spin entropy in bits.
    pub entropy: f64,
}

/// Uniform grid of `steps` points over one period `pi / g`.
pub fn default_time_grid(g: f64, steps: usize) -> Vec<f64> {
    let period = std::f64::consts::PI / g.abs().max(1e-300);
    if steps <= 1 {
        return vec![0.0];
    }
    (0..steps)
        .map(|i| period * i as f64 / (steps - 1) as f64)
        .collect()
}

/// Evolves the full `N+1`-qubit register and recomputes `|r|^2`, the tangles
/// and the central-spin entropy from the state vector alone. Grid-for-grid
/// agreement with the closed forms is the oracle test for this model.
pub fn simulate_zurek_exact(cfg: &ZurekConfig, times: &[f64]) -> Result<Vec<ZurekSample>> {
    cfg.validate()?;
    cfg.full_register()?;
    let psi0 = initial_state(cfg)?;
    let propagator = Propagator::new(&zurek_hamiltonian(cfg)?);

    // Branch overlap r(t) = <B(0)| exp(2 i H_bath t) |B(0)> with
    // H_bath = (g/2) sum_k sigma_z^(k) on the bath register alone.
    let bath_register = QubitRegister::new(cfg.n_bath)?;
    let mut branch_ham = HermitianOperator::zero(bath_register);
    for k in 0..cfg.n_bath {
        branch_ham = branch_ham.add(&pauli_embed(PauliAxis::Z, k, bath_register)?)?;
    }
    let branch_prop = Propagator::new(&branch_ham.scale(cfg.g / 2.0));
    let bath0 = bath_state(cfg)?;

    let mut samples = Vec::with_capacity(times.len());
    for &t in times {
        let psi_t = propagator.evolve_state(&psi0, t)?;
        let tau_sb = tangle_pure_cut(&psi_t, 0)?;
        let tau_b = if cfg.n_bath >= 2 {
            tangle_mixed_pair(&reduced_from_pure(&psi_t, &[1, 2])?)?
        } else {
            0.0
        };
        let rho_s = reduced_from_pure(&psi_t, &[0])?;
        let entropy = von_neumann_entropy(&rho_s);
        let r = bath0.inner(&branch_prop.evolve_state(&bath0, -2.0 * t)?);
        samples.push(ZurekSample {
            t,
            r2: r.norm_sqr(),
            tau_sb,
            tau_b,
            entropy,
        });
    }
    Ok(samples)
}

/// Sharing bound evaluated for a Zurek config: the entangled bath uses its
/// constant pairwise tangle; a product bath is unentangled, so the bound is
/// the trivial 1 (as it is for a single bath spin, where no pair exists).
pub fn zurek_bound(cfg: &ZurekConfig) -> Result<f64> {
    match cfg.bath {
        BathKind::Entangled { .. } if cfg.n_bath >= 2 => {
            let tau_b = entangled_bath_pairwise_tangle(cfg)?;
            Ok(sharing_bound(tau_b, cfg.n_bath)?.bound_tau_sb)
        }
        _ => Ok(1.0),
    }
}

/// Convenience: the closed-form tangles and factor at one time, matching the
/// CSV columns of the batch interface.
pub fn closed_form_sample(cfg: &ZurekConfig, t: f64) -> Result<ZurekSample> {
    let r2 = r2(cfg, t)?;
    let tau_sb = zurek_tangle(cfg, t)?;
    let tau_b = match cfg.bath {
        BathKind::Entangled { .. } if cfg.n_bath >= 2 => entangled_bath_pairwise_tangle(cfg)?,
        _ => 0.0,
    };
    let rho_s = reduced_central_state(cfg, t)?;
    Ok(ZurekSample {
        t,
        r2,
        tau_sb,
        tau_b,
        entropy: von_neumann_entropy(&rho_s),
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn half() -> C64 {
        cr(1.0 / 2f64.sqrt())
    }

    fn product_cfg(n_bath: usize, alpha_sq: f64) -> ZurekConfig {
        ZurekConfig {
            n_bath,
            g: 1.0,
            chi: half(),
            gamma: half(),
            bath: BathKind::Product {
                alpha: cr(alpha_sq.sqrt()),
                beta: cr((1.0 - alpha_sq).sqrt()),
            },
        }
    }

    fn entangled_cfg(n_bath: usize, a_sq: f64) -> ZurekConfig {
        ZurekConfig {
            n_bath,
            g: 1.0,
            chi: half(),
            gamma: half(),
            bath: BathKind::Entangled {
                a: a_sq.sqrt(),
                d: (1.0 - a_sq).sqrt(),
            },
        }
    }

    #[test]
    fn hamiltonian_n1_is_zz() {
        let mut cfg = product_cfg(1, 0.5);
        cfg.g = 2.0;
        let h = zurek_hamiltonian(&cfg).unwrap();
        let diag: Vec<f64> = h.matrix().diagonal().iter().map(|x| x.re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn hamiltonian_is_diagonal_and_commutes_with_central_z() {
        let cfg = product_cfg(3, 0.3);
        let h = zurek_hamiltonian(&cfg).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                if i != j {
                    assert_eq!(h.matrix()[(i, j)], cr(0.0));
                }
            }
        }
        let z0 = pauli_embed(PauliAxis::Z, 0, h.register()).unwrap();
        let comm = h.matrix() * z0.matrix() - z0.matrix() * h.matrix();
        assert!(comm.map(|x| x.norm()).max() < 1e-14);
    }

    #[test]
    fn r2_product_examples() {
        let cfg = product_cfg(3, 1.0);
        assert!((r2_product(&cfg, 0.77).unwrap() - 1.0).abs() < 1e-14);

        let cfg = product_cfg(1, 0.5);
        assert!(r2_product(&cfg, PI / 2.0).unwrap().abs() < 1e-14);

        let cfg = product_cfg(2, 0.5);
        assert!((r2_product(&cfg, PI / 4.0).unwrap() - 0.25).abs() < 1e-14);
    }

    #[test]
    fn r2_entangled_examples() {
        let cfg = entangled_cfg(5, 0.3);
        assert!((r2_entangled(&cfg, 0.0).unwrap() - 1.0).abs() < 1e-14);

        let cfg = entangled_cfg(5, 0.8);
        assert!((r2_entangled(&cfg, PI / 2.0).unwrap() - 0.36).abs() < 1e-12);

        let cfg = entangled_cfg(5, 0.5);
        assert!(r2_entangled(&cfg, PI / 2.0).unwrap().abs() < 1e-14);

        // minimum over t is (a^2 - d^2)^2
        let cfg = entangled_cfg(4, 0.7);
        let min = (0..2000)
            .map(|i| r2_entangled(&cfg, 4.0 * PI * i as f64 / 1999.0).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!((min - (0.7f64 - 0.3).powi(2)).abs() < 1e-5);
    }

    #[test]
    fn reduced_state_examples() {
        let cfg = entangled_cfg(3, 0.8);
        let rho0 = reduced_central_state(&cfg, 0.0).unwrap();
        assert!((rho0.purity() - 1.0).abs() < 1e-12);

        let pinned = ZurekConfig {
            chi: cr(1.0),
            gamma: cr(0.0),
            ..entangled_cfg(3, 0.8)
        };
        let rho = reduced_central_state(&pinned, 1.3).unwrap();
        assert!((rho.matrix()[(1, 1)] - cr(1.0)).norm() < 1e-14);
        assert!(rho.matrix()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn tangle_examples_and_saturation() {
        let cfg = entangled_cfg(2, 0.5);
        assert!(zurek_tangle(&cfg, 0.0).unwrap().abs() < 1e-14);
        assert!((zurek_tangle(&cfg, PI / 2.0).unwrap() - 1.0).abs() < 1e-12);

        let cfg = entangled_cfg(2, 0.8);
        let tau = zurek_tangle(&cfg, PI / 2.0).unwrap();
        assert!((tau - 0.64).abs() < 1e-12);
        assert!((tau - 4.0 * 0.8 * 0.2).abs() < 1e-12);
    }

    #[test]
    fn pairwise_bath_tangle() {
        let cfg = entangled_cfg(4, 0.0);
        assert_eq!(entangled_bath_pairwise_tangle(&cfg).unwrap(), 0.0);

        let cfg = entangled_cfg(2, 1.0);
        let tau = entangled_bath_pairwise_tangle(&cfg).unwrap();
        assert!((tau - 1.0).abs() < 1e-14);
        // the explicitly reduced two-spin bath state must agree
        let bath = bath_state(&cfg).unwrap();
        let numeric = tangle_mixed_pair(&reduced_from_pure(&bath, &[0, 1]).unwrap()).unwrap();
        assert!((numeric - tau).abs() < 1e-10);

        for n in 2..=6usize {
            let cfg = entangled_cfg(n, 0.5);
            let tau = entangled_bath_pairwise_tangle(&cfg).unwrap();
            assert!((tau - 1.0 / (n as f64 * n as f64)).abs() < 1e-14);
        }
    }

    #[test]
    fn simulation_matches_closed_forms() {
        for cfg in [product_cfg(4, 0.35), entangled_cfg(4, 0.8)] {
            let grid = default_time_grid(cfg.g, 50);
            let samples = simulate_zurek_exact(&cfg, &grid).unwrap();
            let mut worst = 0.0f64;
            for s in &samples {
                let closed = closed_form_sample(&cfg, s.t).unwrap();
                worst = worst
                    .max((s.r2 - closed.r2).abs())
                    .max((s.tau_sb - closed.tau_sb).abs())
                    .max((s.tau_b - closed.tau_b).abs());
            }
            assert!(worst < 1e-10, "oracle residual {worst}");
        }
    }

    #[test]
    fn bath_tangle_constant_under_dephasing() {
        let cfg = entangled_cfg(4, 0.7);
        let grid = default_time_grid(cfg.g, 50);
        let samples = simulate_zurek_exact(&cfg, &grid).unwrap();
        let first = samples[0].tau_b;
        for s in &samples {
            assert!((s.tau_b - first).abs() < 1e-10);
        }
    }

    #[test]
    fn n1_product_and_entangled_parametrizations_coincide() {
        // same one-spin marginal: beta = a (up amplitude), alpha = d
        let (a, d) = (0.6, 0.8);
        let prod = ZurekConfig {
            n_bath: 1,
            g: 1.0,
            chi: half(),
            gamma: half(),
            bath: BathKind::Product {
                alpha: cr(d),
                beta: cr(a),
            },
        };
        let ent = ZurekConfig {
            bath: BathKind::Entangled { a, d },
            ..prod
        };
        for i in 0..20 {
            let t = 0.3 * i as f64;
            assert!((r2_product(&prod, t).unwrap() - r2_entangled(&ent, t).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn r2_stays_in_unit_interval_and_is_periodic() {
        let period = PI / 1.0;
        for cfg in [product_cfg(5, 0.3), entangled_cfg(5, 0.85)] {
            for i in 0..200 {
                let t = 3.0 * period * i as f64 / 199.0;
                let v = r2(&cfg, t).unwrap();
                assert!((0.0..=1.0).contains(&v));
                let shifted = r2(&cfg, t + period).unwrap();
                assert!((v - shifted).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn product_bath_time_average_decays_with_n() {
        // time-average of r2 over one period at |alpha|^2 = 1/2 decreases in N
        let mut prev = f64::INFINITY;
        for n in 1..=8 {
            let cfg = product_cfg(n, 0.5);
            let grid = default_time_grid(cfg.g, 2001);
            let avg: f64 =
                grid.iter().map(|&t| r2_product(&cfg, t).unwrap()).sum::<f64>() / 2001.0;
            assert!(avg < prev, "average not decreasing at N = {n}");
            prev = avg;
        }
    }

    #[test]
    fn purity_preserved_along_simulation() {
        let cfg = entangled_cfg(3, 0.6);
        let psi0 = initial_state(&cfg).unwrap();
        let prop = Propagator::new(&zurek_hamiltonian(&cfg).unwrap());
        for i in 0..10 {
            let t = 0.4 * i as f64;
            let psi_t = prop.evolve_state(&psi0, t).unwrap();
            let purity = DensityOperator::from_pure(&psi_t).purity();
            assert!((purity - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn oversized_register_is_rejected() {
        let cfg = product_cfg(13, 0.5);
        assert!(matches!(
            simulate_zurek_exact(&cfg, &[0.0]),
            Err(Error::RegisterTooLarge { .. })
        ));
    }

    #[test]
    fn closed_reduced_state_matches_partial_trace_of_simulation() {
        let with_phases = ZurekConfig {
            chi: C64::from_polar(0.6, std::f64::consts::PI / 5.0),
            gamma: C64::from_polar(0.8, -std::f64::consts::PI / 7.0),
            ..product_cfg(3, 0.4)
        };
        for cfg in [entangled_cfg(3, 0.75), product_cfg(3, 0.4), with_phases] {
            let psi0 = initial_state(&cfg).unwrap();
            let prop = Propagator::new(&zurek_hamiltonian(&cfg).unwrap());
            for t in [0.0, 0.4, 1.1] {
                let psi_t = prop.evolve_state(&psi0, t).unwrap();
                let sim = reduced_from_pure(&psi_t, &[0]).unwrap();
                let closed = reduced_central_state(&cfg, t).unwrap();
                let diff = (sim.matrix() - closed.matrix()).map(|x| x.norm()).max();
                assert!(diff < 1e-12, "t = {t}: {diff}");
            }
        }
    }
}
