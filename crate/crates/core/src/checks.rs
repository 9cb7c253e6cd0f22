//! Named verification suites.
//!
//! Each suite returns one [`CheckResult`] per assertion with the measured
//! value and its threshold, so the batch interface can print a full report
//! and the integration tests can gate on `pass`. The suites deliberately pit
//! independent computations against each other: grid search against closed
//! forms, state-vector simulation against analytic factors, trajectories
//! against two-level solutions.

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::entanglement::{
    brute_force_max_taub, max_taub_given_tausb, sharing_bound, tangle_mixed_pair,
    tangle_pure_cut, w_state_vector, WStateParams,
};
use crate::error::Result;
use crate::qlinalg::{
    cr, expectation, partial_trace, reduced_from_pure, QubitRegister, StateVector,
};
use crate::tessieri_wilkie::{
    free_rabi_sx, tw_evolve, tw_evolve_with, tw_hamiltonians, tw_initial_state, tw_sweep,
    TWConfig,
};
use crate::zurek::{
    closed_form_sample, default_time_grid, entangled_bath_pairwise_tangle, simulate_zurek_exact,
    zurek_tangle, BathKind, ZurekConfig,
};

/// Direction of an assertion: whether `measured` must stay at or below the
/// threshold or at or above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    AtMost,
    AtLeast,
}

/// One verified assertion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl CheckResult {
    fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            comparison: Comparison::AtMost,
            pass: measured <= threshold,
        }
    }

    fn at_least(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            comparison: Comparison::AtLeast,
            pass: measured >= threshold,
        }
    }
}

pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}

/// Haar draw on the full three-qubit sphere (no bath symmetry imposed).
fn haar_three_qubit(rng: &mut ChaCha8Rng) -> StateVector {
    let register = QubitRegister::new(3).unwrap();
    let amps = DVector::from_fn(8, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    });
    StateVector::normalized(register, amps).unwrap()
}

/// Residual tripartite entanglement suite over Haar-random 3-qubit states:
/// non-negativity, permutation invariance across the three cuts, the
/// `tau_B + three_tangle <= 1` cap, and the pairwise-sum witness above 1.3.
pub fn ckw_suite(n_states: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_three_tangle = f64::INFINITY;
    let mut max_perm_residual = 0.0f64;
    let mut max_capped_sum = f64::NEG_INFINITY;
    for _ in 0..n_states {
        let psi = haar_three_qubit(&mut rng);
        let cut: Vec<f64> = (0..3).map(|q| tangle_pure_cut(&psi, q)).collect::<Result<_>>()?;
        let pair = |a: usize, b: usize| -> Result<f64> {
            tangle_mixed_pair(&reduced_from_pure(&psi, &[a, b])?)
        };
        let (t01, t02, t12) = (pair(0, 1)?, pair(0, 2)?, pair(1, 2)?);
        let residuals = [
            cut[0] - t01 - t02,
            cut[1] - t01 - t12,
            cut[2] - t02 - t12,
        ];
        for r in residuals {
            min_three_tangle = min_three_tangle.min(r);
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                max_perm_residual = max_perm_residual.max((residuals[i] - residuals[j]).abs());
            }
        }
        max_capped_sum = max_capped_sum.max(t12 + residuals[0]);
    }

    // the symmetric three-spin single-excitation state pushes the pairwise
    // sum to 4/3, past the 1.3 mark the cap can never reach
    let w = w_state_vector(&WStateParams::symmetric(2, 1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt())?)?;
    let witness = tangle_mixed_pair(&reduced_from_pure(&w, &[1, 2])?)?
        + tangle_mixed_pair(&reduced_from_pure(&w, &[0, 1])?)?
        + tangle_mixed_pair(&reduced_from_pure(&w, &[0, 2])?)?;

    Ok(vec![
        CheckResult::at_least(
            format!("three_tangle_min_over_{n_states}_states"),
            min_three_tangle,
            -1e-9,
        ),
        CheckResult::at_most(
            format!("three_tangle_permutation_residual_over_{n_states}_states"),
            max_perm_residual,
            1e-9,
        ),
        CheckResult::at_most(
            format!("tau_b_plus_three_tangle_over_{n_states}_states"),
            max_capped_sum,
            1.0 + 1e-9,
        ),
        CheckResult::at_least("pairwise_tangle_sum_witness", witness, 1.3),
    ])
}

/// Closed form vs grid-search oracle for the maximal intra-bath tangle.
pub fn lagrange_suite(grid_points: usize) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    for n in [2usize, 3, 5] {
        for k in 1..=9usize {
            let tau_sb = k as f64 / 10.0;
            let oracle = brute_force_max_taub(tau_sb, n, grid_points)?;
            let closed = max_taub_given_tausb(tau_sb, n)?;
            results.push(CheckResult::at_most(
                format!("lagrange_n{n}_tausb_{}", k as f64 / 10.0),
                (oracle - closed).abs(),
                1e-4,
            ));
        }
    }
    Ok(results)
}

fn zurek_config(n_bath: usize, bath: BathKind) -> ZurekConfig {
    let h = cr(1.0 / 2f64.sqrt());
    ZurekConfig {
        n_bath,
        g: 1.0,
        chi: h,
        gamma: h,
        bath,
    }
}

/// Closed forms against the full state-vector simulation, bath-tangle
/// conservation, and saturation of the sharing bound at the coherence dip.
pub fn zurek_oracle_suite() -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    for n in [2usize, 4, 6, 8] {
        let baths = [
            ("product", BathKind::Product {
                alpha: cr(0.35f64.sqrt()),
                beta: cr(0.65f64.sqrt()),
            }),
            ("entangled", BathKind::Entangled {
                a: 0.8f64.sqrt(),
                d: 0.2f64.sqrt(),
            }),
        ];
        for (label, bath) in baths {
            let cfg = zurek_config(n, bath);
            let grid = default_time_grid(cfg.g, 50);
            let samples = simulate_zurek_exact(&cfg, &grid)?;
            let mut worst = 0.0f64;
            let mut tau_b_drift = 0.0f64;
            for s in &samples {
                let closed = closed_form_sample(&cfg, s.t)?;
                worst = worst
                    .max((s.r2 - closed.r2).abs())
                    .max((s.tau_sb - closed.tau_sb).abs())
                    .max((s.tau_b - closed.tau_b).abs());
                tau_b_drift = tau_b_drift.max((s.tau_b - samples[0].tau_b).abs());
            }
            results.push(CheckResult::at_most(
                format!("zurek_oracle_residual_n{n}_{label}"),
                worst,
                1e-10,
            ));
            if matches!(bath, BathKind::Entangled { .. }) {
                results.push(CheckResult::at_most(
                    format!("zurek_tau_b_conservation_n{n}"),
                    tau_b_drift,
                    1e-10,
                ));
            }
        }
    }

    // bound saturation at the coherence dip gt = pi/2
    let n = 4;
    for a_sq in [0.5f64, 0.65, 0.8, 0.95] {
        let cfg = zurek_config(
            n,
            BathKind::Entangled {
                a: a_sq.sqrt(),
                d: (1.0 - a_sq).sqrt(),
            },
        );
        let t_star = std::f64::consts::FRAC_PI_2 / cfg.g;
        let peak = zurek_tangle(&cfg, t_star)?;
        let analytic = 4.0 * a_sq * (1.0 - a_sq);
        let bound = sharing_bound(entangled_bath_pairwise_tangle(&cfg)?, n)?.bound_tau_sb;
        results.push(CheckResult::at_most(
            format!("zurek_saturation_peak_a2_{a_sq}"),
            (peak - analytic).abs(),
            1e-10,
        ));
        results.push(CheckResult::at_most(
            format!("zurek_saturation_bound_a2_{a_sq}"),
            (bound - analytic).abs(),
            1e-10,
        ));
        // and the tangle never exceeds the bound along a grid
        let worst_excess = default_time_grid(cfg.g, 50)
            .iter()
            .map(|&t| zurek_tangle(&cfg, t).unwrap() - bound)
            .fold(f64::NEG_INFINITY, f64::max);
        results.push(CheckResult::at_most(
            format!("zurek_tangle_below_bound_a2_{a_sq}"),
            worst_excess,
            1e-10,
        ));
    }
    Ok(results)
}

/// Trajectory phenomenology and numerical hygiene at the default couplings.
///
/// The monotonicity assertions are kept exactly as stated even though the
/// measured values at the default `kT = 0.1` fail two of them (see the
/// suite's entries): the initial bath tangle dips at the largest coupling
/// because the bath gap closes faster than `kT`, and the fidelity dips at
/// intermediate coupling where the bath's low-lying excitations resonate
/// with the central spin. Both trends are reported, not hidden.
pub fn tw_sanity_suite(base: &TWConfig, lambdas: &[f64]) -> Result<Vec<CheckResult>> {
    let mut results = Vec::new();
    let rows = tw_sweep(base, lambdas)?;

    let mut min_tau_step = f64::INFINITY;
    let mut min_fidelity_step = f64::INFINITY;
    for pair in rows.windows(2) {
        min_tau_step = min_tau_step.min(pair[1].initial_tau_b - pair[0].initial_tau_b);
        min_fidelity_step = min_fidelity_step.min(pair[1].fidelity - pair[0].fidelity);
    }
    results.push(CheckResult::at_least(
        "tw_initial_tau_b_non_decreasing_in_lambda",
        min_tau_step,
        0.0,
    ));
    results.push(CheckResult::at_least(
        "tw_initial_tau_b_positive_at_max_lambda",
        rows.last().unwrap().initial_tau_b,
        f64::MIN_POSITIVE,
    ));
    results.push(CheckResult::at_least(
        "tw_fidelity_strictly_increasing_in_lambda",
        min_fidelity_step,
        f64::MIN_POSITIVE,
    ));

    // decoupled run against the closed-form two-level solution
    let decoupled = TWConfig {
        lambda0: 0.0,
        lambda: 0.0,
        ..*base
    };
    let traj = tw_evolve(&decoupled)?;
    let mut worst = 0.0f64;
    for (&t, &sx) in traj.times.iter().zip(&traj.sx_central) {
        worst = worst.max((sx - free_rabi_sx(decoupled.omega0, decoupled.beta, t)).abs());
    }
    results.push(CheckResult::at_most(
        "tw_decoupled_matches_closed_form",
        worst,
        1e-10,
    ));

    // numerical hygiene along the swept trajectories
    let mut max_trace_dev = 0.0f64;
    let mut max_herm_dev = 0.0f64;
    let mut min_eigenvalue = f64::INFINITY;
    let mut max_energy_drift = 0.0f64;
    let mut max_pair_spread = 0.0f64;
    for &lambda in lambdas {
        let cfg = TWConfig { lambda, ..*base };
        let hams = tw_hamiltonians(&cfg)?;
        let e0 = expectation(&tw_initial_state(&cfg)?, &hams.total)?;
        let scale = e0.abs().max(1.0);
        let probe_every = (cfg.n_steps / 5).max(1);
        let mut step = 0usize;
        tw_evolve_with(&cfg, |_, rho| {
            max_trace_dev = max_trace_dev.max((rho.trace() - cr(1.0)).norm());
            let e = expectation(rho, &hams.total)?;
            max_energy_drift = max_energy_drift.max(((e - e0) / scale).abs());
            if step.is_multiple_of(probe_every) {
                let m = rho.matrix();
                for i in 0..m.nrows() {
                    for j in i..m.ncols() {
                        max_herm_dev =
                            max_herm_dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
                    }
                }
                let spectrum = m.clone().symmetric_eigen().eigenvalues;
                min_eigenvalue =
                    min_eigenvalue.min(spectrum.iter().fold(f64::INFINITY, |a, &x| a.min(x)));
                let pairs = [[1usize, 2], [1, cfg.n_bath], [2, 3]];
                let taus: Vec<f64> = pairs
                    .iter()
                    .map(|p| tangle_mixed_pair(&partial_trace(rho, p)?))
                    .collect::<Result<_>>()?;
                for i in 0..taus.len() {
                    for j in (i + 1)..taus.len() {
                        max_pair_spread = max_pair_spread.max((taus[i] - taus[j]).abs());
                    }
                }
            }
            step += 1;
            Ok(())
        })?;
    }
    results.push(CheckResult::at_most("tw_trace_deviation", max_trace_dev, 1e-9));
    results.push(CheckResult::at_most("tw_hermiticity_deviation", max_herm_dev, 1e-9));
    results.push(CheckResult::at_least("tw_min_eigenvalue", min_eigenvalue, -1e-9));
    results.push(CheckResult::at_most(
        "tw_energy_drift_relative",
        max_energy_drift,
        1e-9,
    ));
    results.push(CheckResult::at_most(
        "tw_pairwise_tangle_spread",
        max_pair_spread,
        1e-9,
    ));

    // the measured phenomenology, recorded for the report
    for row in &rows {
        results.push(CheckResult::at_least(
            format!("tw_observed_initial_tau_b_lambda_{}", row.lambda),
            row.initial_tau_b,
            0.0,
        ));
        results.push(CheckResult::at_least(
            format!("tw_observed_fidelity_lambda_{}", row.lambda),
            row.fidelity,
            0.0,
        ));
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tessieri_wilkie::fidelity_metric;

    #[test]
    fn ckw_suite_passes_at_reduced_scale() {
        let results = ckw_suite(300, 5).unwrap();
        assert!(all_pass(&results), "{results:#?}");
    }

    #[test]
    fn lagrange_suite_passes() {
        let results = lagrange_suite(100_000).unwrap();
        assert!(all_pass(&results), "{results:#?}");
    }

    #[test]
    fn zurek_suite_passes() {
        let results = zurek_oracle_suite().unwrap();
        assert!(all_pass(&results), "{results:#?}");
    }

    #[test]
    fn tw_suite_reports_the_known_failures_and_passes_hygiene() {
        let base = TWConfig {
            n_bath: 4,
            n_steps: 40,
            time_max: 12.0,
            ..TWConfig::default()
        };
        let results = tw_sanity_suite(&base, &[0.0, 1.0, 5.0]).unwrap();
        let get = |name: &str| results.iter().find(|r| r.name == name).unwrap();
        assert!(get("tw_decoupled_matches_closed_form").pass);
        assert!(get("tw_trace_deviation").pass);
        assert!(get("tw_hermiticity_deviation").pass);
        assert!(get("tw_min_eigenvalue").pass);
        assert!(get("tw_energy_drift_relative").pass);
        assert!(get("tw_pairwise_tangle_spread").pass);
        assert!(get("tw_initial_tau_b_positive_at_max_lambda").pass);
    }

    #[test]
    fn fidelity_metric_is_one_for_the_free_trajectory() {
        let cfg = TWConfig {
            n_bath: 2,
            lambda0: 0.0,
            n_steps: 30,
            time_max: 10.0,
            ..TWConfig::default()
        };
        let traj = tw_evolve(&cfg).unwrap();
        let fid = fidelity_metric(&cfg, &traj);
        assert!((fid - 1.0).abs() < 1e-9, "fidelity {fid}");
    }
}
