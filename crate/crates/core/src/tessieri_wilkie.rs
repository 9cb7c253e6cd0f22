//! Central spin in a self-interacting bath with a thermal initial state.
//!
//! `H_S = (w0/2) sigma_z + beta sigma_x` drives Rabi oscillations of the
//! central spin; the bath carries its own splittings, transverse field and an
//! all-to-all `lambda sigma_x sigma_x` coupling, and starts in the Gibbs
//! state of `H_B`. Sweeping `lambda` changes how much entanglement the
//! thermal bath carries and thereby how strongly the `lambda_0` coupling can
//! decohere the central spin.

use crate::entanglement::tangle_mixed_pair;
use crate::error::{Error, Result};
use crate::qlinalg::{
    cr, expectation, partial_trace, pauli_embed, thermal_state, von_neumann_entropy,
    DensityOperator, HermitianOperator, PauliAxis, Propagator, QubitRegister, Temperature,
    MAX_QUBITS,
};

/// Full parameter set. `lambda` is the swept intra-bath coupling; all other
/// couplings default to the reference values of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TWConfig {
    pub n_bath: usize,
    /// Central-spin splitting.
    pub omega0: f64,
    /// Common bath-spin splitting.
    pub omega_i: f64,
    /// Transverse field on every spin.
    pub beta: f64,
    /// System-bath coupling.
    pub lambda0: f64,
    /// Intra-bath coupling.
    pub lambda: f64,
    /// Bath temperature in units of `omega_i`.
    pub kt: Temperature,
    pub time_max: f64,
    pub n_steps: usize,
}

impl Default for TWConfig {
    fn default() -> Self {
        Self {
            n_bath: 6,
            omega0: 0.8288,
            omega_i: 1.0,
            beta: 0.01,
            lambda0: 1.0,
            lambda: 0.0,
            kt: Temperature::Finite(0.1),
            time_max: 30.0,
            n_steps: 200,
        }
    }
}

impl TWConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_bath < 2 {
            return Err(Error::InvalidParameter(
                "the model needs at least two bath spins".into(),
            ));
        }
        if self.n_bath + 1 > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                n_qubits: self.n_bath + 1,
                max: MAX_QUBITS,
            });
        }
        if self.n_steps < 2 {
            return Err(Error::InvalidParameter(
                "trajectory needs at least two grid points".into(),
            ));
        }
        for (name, value) in [
            ("omega0", self.omega0),
            ("omega_i", self.omega_i),
            ("beta", self.beta),
            ("lambda0", self.lambda0),
            ("lambda", self.lambda),
            ("time_max", self.time_max),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
        }
        if self.time_max <= 0.0 {
            return Err(Error::InvalidParameter("time_max must be positive".into()));
        }
        Ok(())
    }

    pub fn full_register(&self) -> Result<QubitRegister> {
        self.validate()?;
        QubitRegister::new(self.n_bath + 1)
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_steps)
            .map(|i| self.time_max * i as f64 / (self.n_steps - 1) as f64)
            .collect()
    }
}

/// The three Hamiltonian pieces and their sum, all on the full register.
#[derive(Debug, Clone)]
pub struct TWHamiltonians {
    pub system: HermitianOperator,
    pub bath: HermitianOperator,
    pub coupling: HermitianOperator,
    pub total: HermitianOperator,
}

/// Builds `H_S`, `H_B`, `H_SB` and `H = H_S + H_B + H_SB`.
///
/// The intra-bath double sum runs over unordered pairs `i < j`.
pub fn tw_hamiltonians(cfg: &TWConfig) -> Result<TWHamiltonians> {
    let register = cfg.full_register()?;
    let n = cfg.n_bath;

    let x: Vec<HermitianOperator> = (0..=n)
        .map(|q| pauli_embed(PauliAxis::X, q, register))
        .collect::<Result<_>>()?;

    let system = pauli_embed(PauliAxis::Z, 0, register)?
        .scale(cfg.omega0 / 2.0)
        .add(&x[0].scale(cfg.beta))?;

    let mut bath = HermitianOperator::zero(register);
    for (i, xi) in x.iter().enumerate().skip(1) {
        bath = bath.add(&pauli_embed(PauliAxis::Z, i, register)?.scale(cfg.omega_i / 2.0))?;
        bath = bath.add(&xi.scale(cfg.beta))?;
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            bath = bath.add(&x[i].commuting_product(&x[j])?.scale(cfg.lambda))?;
        }
    }

    let mut coupling = HermitianOperator::zero(register);
    for xi in x.iter().skip(1) {
        coupling = coupling.add(&xi.commuting_product(&x[0])?.scale(cfg.lambda0))?;
    }

    let total = system.add(&bath)?.add(&coupling)?;
    Ok(TWHamiltonians {
        system,
        bath,
        coupling,
        total,
    })
}

/// `H_B` on the bath register alone, for preparing the thermal state.
pub fn tw_bath_hamiltonian(cfg: &TWConfig) -> Result<HermitianOperator> {
    cfg.validate()?;
    let register = QubitRegister::new(cfg.n_bath)?;
    let x: Vec<HermitianOperator> = (0..cfg.n_bath)
        .map(|q| pauli_embed(PauliAxis::X, q, register))
        .collect::<Result<_>>()?;
    let mut bath = HermitianOperator::zero(register);
    for (i, xi) in x.iter().enumerate() {
        bath = bath.add(&pauli_embed(PauliAxis::Z, i, register)?.scale(cfg.omega_i / 2.0))?;
        bath = bath.add(&xi.scale(cfg.beta))?;
    }
    for i in 0..cfg.n_bath {
        for j in (i + 1)..cfg.n_bath {
            bath = bath.add(&x[i].commuting_product(&x[j])?.scale(cfg.lambda))?;
        }
    }
    Ok(bath)
}

/// `|+><+|_S (x) exp(-H_B/kT)/Z`.
pub fn tw_initial_state(cfg: &TWConfig) -> Result<DensityOperator> {
    let register = cfg.full_register()?;
    let bath_thermal = thermal_state(&tw_bath_hamiltonian(cfg)?, cfg.kt)?;
    let mut plus = nalgebra::DMatrix::from_element(2, 2, cr(0.5));
    plus[(0, 1)] = cr(0.5);
    let joint = plus.kronecker(bath_thermal.matrix());
    DensityOperator::new(register, joint)
}

/// Closed-form `<sigma_x>(t)` of the bare two-level system prepared in
/// `|+>`: precession of the Bloch vector `(1, 0, 0)` about the field axis of
/// `(w0/2) sigma_z + beta sigma_x`.
pub fn free_rabi_sx(omega0: f64, beta: f64, t: f64) -> f64 {
    let rabi = (omega0 * omega0 + 4.0 * beta * beta).sqrt();
    if rabi == 0.0 {
        return 1.0;
    }
    let sin_sq = (2.0 * beta / rabi).powi(2);
    sin_sq + (1.0 - sin_sq) * (rabi * t).cos()
}

/// Per-time observables along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TWTrajectory {
    pub times: Vec<f64>,
    /// `<sigma_x>` of the central spin.
    pub sx_central: Vec<f64>,
    /// Pairwise tangle of bath spins 1 and 2.
    pub tau_b: Vec<f64>,
    /// Central-spin entropy in bits.
    pub entropy_central: Vec<f64>,
}

/// Evolves `rho(t) = U(t) rho(0) U(t)^dagger` on the trajectory grid; the
/// spectral decomposition of `H` is computed once. The observer sees every
/// validated `rho(t)` and may do further bookkeeping (energy drift, pair
/// symmetry, ...).
pub fn tw_evolve_with<F>(cfg: &TWConfig, mut observer: F) -> Result<TWTrajectory>
where
    F: FnMut(f64, &DensityOperator) -> Result<()>,
{
    let register = cfg.full_register()?;
    let hams = tw_hamiltonians(cfg)?;
    let rho0 = tw_initial_state(cfg)?;
    let propagator = Propagator::new(&hams.total);
    let in_eigenbasis = propagator.to_eigenbasis(rho0.matrix());
    let sx0 = pauli_embed(PauliAxis::X, 0, register)?;

    let times = cfg.times();
    let mut sx_central = Vec::with_capacity(times.len());
    let mut tau_b = Vec::with_capacity(times.len());
    let mut entropy_central = Vec::with_capacity(times.len());
    for &t in &times {
        let rotated = propagator.apply_phases(&in_eigenbasis, t);
        let rho_t = DensityOperator::new(register, propagator.from_eigenbasis(&rotated))?;
        sx_central.push(expectation(&rho_t, &sx0)?);
        let pair = partial_trace(&rho_t, &[1, 2])?;
        tau_b.push(tangle_mixed_pair(&pair)?);
        entropy_central.push(von_neumann_entropy(&partial_trace(&rho_t, &[0])?));
        observer(t, &rho_t)?;
    }
    Ok(TWTrajectory {
        times,
        sx_central,
        tau_b,
        entropy_central,
    })
}

pub fn tw_evolve(cfg: &TWConfig) -> Result<TWTrajectory> {
    tw_evolve_with(cfg, |_, _| Ok(()))
}

/// `1 - (1/T) integral |sx - sx_free| dt / 2`, trapezoidal on the grid:
/// 1 for a trajectory identical to the bare Rabi oscillation, smaller the
/// further the central spin strays from it.
pub fn fidelity_metric(cfg: &TWConfig, trajectory: &TWTrajectory) -> f64 {
    let dev: Vec<f64> = trajectory
        .times
        .iter()
        .zip(&trajectory.sx_central)
        .map(|(&t, &sx)| (sx - free_rabi_sx(cfg.omega0, cfg.beta, t)).abs())
        .collect();
    let mut integral = 0.0;
    for i in 1..trajectory.times.len() {
        let dt = trajectory.times[i] - trajectory.times[i - 1];
        integral += 0.5 * dt * (dev[i] + dev[i - 1]);
    }
    let span = trajectory.times.last().unwrap() - trajectory.times[0];
    1.0 - integral / span / 2.0
}

/// One row of a coupling sweep.
#[derive(Debug, Clone)]
pub struct TWSweepRow {
    pub lambda: f64,
    pub initial_tau_b: f64,
    pub fidelity: f64,
    pub trajectory: TWTrajectory,
}

/// Runs one trajectory per intra-bath coupling and reports the initial bath
/// tangle and fidelity metric alongside each.
pub fn tw_sweep(cfg: &TWConfig, lambdas: &[f64]) -> Result<Vec<TWSweepRow>> {
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("empty lambda list".into()));
    }
    lambdas
        .iter()
        .map(|&lambda| {
            let run_cfg = TWConfig { lambda, ..*cfg };
            let trajectory = tw_evolve(&run_cfg)?;
            Ok(TWSweepRow {
                lambda,
                initial_tau_b: trajectory.tau_b[0],
                fidelity: fidelity_metric(&run_cfg, &trajectory),
                trajectory,
            })
        })
        .collect()
}
