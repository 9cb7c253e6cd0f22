//! Monte-Carlo verification of the sharing inequality.
//!
//! States are drawn Haar-uniformly on the central-spin (x) symmetric-subspace
//! sphere: `2(N+1)` independent standard complex Gaussians over
//! `{|up>, |down>}_S (x) Dicke(N, k)`, normalized and embedded into the full
//! `2^(N+1)`-dimensional register. Sampling is batched so that a fixed seed
//! yields the same audit for any worker count: batch `b` always consumes
//! ChaCha stream `b`, and the merge is a fold in batch order.

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entanglement::{sharing_bound, tangle_mixed_pair, tangle_pure_cut};
use crate::error::{Error, Result};
use crate::qlinalg::{cr, reduced_from_pure, QubitRegister, StateVector};

/// Samples per RNG stream; fixed so the stream assignment is independent of
/// how batches are scheduled onto workers.
const BATCH_SIZE: u64 = 4096;

/// Orthonormal Dicke basis of the `N`-spin symmetric subspace, kept both as
/// dense vectors and as (basis indices, amplitude) pairs for fast embedding.
#[derive(Debug, Clone)]
pub struct SymmetricBasis {
    n_bath: usize,
    dicke: Vec<StateVector>,
}

impl SymmetricBasis {
    pub fn new(n_bath: usize) -> Result<Self> {
        let register = QubitRegister::new(n_bath)?;
        let dim = register.dimension();
        let mut by_weight: Vec<Vec<usize>> = vec![Vec::new(); n_bath + 1];
        for b in 0..dim {
            by_weight[b.count_ones() as usize].push(b);
        }
        let dicke = by_weight
            .iter()
            .map(|indices| {
                let amp = cr(1.0 / (indices.len() as f64).sqrt());
                let mut amps = DVector::from_element(dim, cr(0.0));
                for &b in indices {
                    amps[b] = amp;
                }
                StateVector::new(register, amps)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n_bath, dicke })
    }

    pub fn n_bath(&self) -> usize {
        self.n_bath
    }

    /// The `k`-down symmetric states, `k = 0..=N`.
    pub fn dicke_states(&self) -> &[StateVector] {
        &self.dicke
    }

    /// Haar-uniform draw on `C^2 (x) Sym^N(C^2)`, embedded into the full
    /// register with the central spin on qubit 0. Gaussian draw order is
    /// fixed: central-spin branch outer, Dicke weight inner, re before im.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<StateVector> {
        let register = QubitRegister::new(self.n_bath + 1)?;
        let bath_dim = 1usize << self.n_bath;
        let mut coeffs = [[cr(0.0); 16]; 2];
        let mut norm_sq = 0.0;
        for branch in coeffs.iter_mut() {
            for g in branch.iter_mut().take(self.n_bath + 1) {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                *g = C64::new(re, im);
                norm_sq += g.norm_sqr();
            }
        }
        let scale = cr(1.0 / norm_sq.sqrt());
        let mut amps = DVector::from_element(register.dimension(), cr(0.0));
        for (s, branch) in coeffs.iter().enumerate() {
            for (k, dicke) in self.dicke.iter().enumerate() {
                let g = branch[k] * scale;
                if g.norm_sqr() == 0.0 {
                    continue;
                }
                let dicke_amps = dicke.amplitudes();
                for b in 0..bath_dim {
                    let da = dicke_amps[b];
                    if da.re != 0.0 {
                        amps[s * bath_dim + b] += g * da;
                    }
                }
            }
        }
        StateVector::new(register, amps)
    }
}

/// One Haar draw on the central-spin (x) symmetric-subspace sphere.
///
/// Builds a fresh [`SymmetricBasis`] per call; hold one and call
/// [`SymmetricBasis::sample`] in a loop instead when drawing many states.
pub fn sample_symmetric_pure(n_bath: usize, rng: &mut ChaCha8Rng) -> Result<StateVector> {
    check_sample_range(n_bath)?;
    SymmetricBasis::new(n_bath)?.sample(rng)
}

fn check_sample_range(n_bath: usize) -> Result<()> {
    if !(2..=8).contains(&n_bath) {
        return Err(Error::InvalidParameter(format!(
            "sampling supports 2 <= N <= 8 bath spins, got {n_bath}"
        )));
    }
    Ok(())
}

/// Which ensemble the audit draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ensemble {
    /// Central spin (x) symmetric subspace (any supported `N`).
    Symmetric,
    /// Central spin (x) two-spin singlet: the bath marginal is permutation
    /// invariant without living in the symmetric subspace. `N = 2` only;
    /// reported separately from the symmetric audit.
    SingletN2,
}

/// Tangles and sharing margin of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginSample {
    pub tau_b: f64,
    pub tau_sb: f64,
    /// `tau_SB - bound(tau_B)`; positive beyond tolerance means violation.
    pub margin: f64,
}

/// Evaluates `tau_SB`, `tau_B` (bath pair `{1, 2}`) and the margin against
/// the sharing bound for any pure state on `N+1 >= 3` qubits.
pub fn sharing_margin(psi: &StateVector) -> Result<MarginSample> {
    let n_bath = psi.register().n_qubits() - 1;
    if n_bath < 2 {
        return Err(Error::InvalidParameter(
            "sharing margin needs at least two bath spins".into(),
        ));
    }
    let tau_sb = tangle_pure_cut(psi, 0)?;
    let raw_tau_b = tangle_mixed_pair(&reduced_from_pure(psi, &[1, 2])?)?;
    // Symmetric-bath marginals cannot exceed 4/N^2; excess beyond roundoff
    // is a logic error, below it is clamped so the bound stays evaluable.
    let n = n_bath as f64;
    let max_tau_b = 4.0 / (n * n);
    if raw_tau_b > max_tau_b + 1e-9 {
        return Err(Error::NumericalBreakdown(format!(
            "pairwise tangle {raw_tau_b} above the symmetric-bath maximum {max_tau_b}"
        )));
    }
    let tau_b = raw_tau_b.min(max_tau_b);
    let bound = sharing_bound(tau_b, n_bath)?.bound_tau_sb;
    Ok(MarginSample {
        tau_b,
        tau_sb,
        margin: tau_sb - bound,
    })
}

/// Aggregate result of a Monte-Carlo audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharingAudit {
    pub n_bath: usize,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub ensemble: Ensemble,
    /// Samples with margin above tolerance.
    pub violations: u64,
    /// Largest margin observed (negative while the bound holds everywhere).
    pub max_margin_violation: f64,
    pub worst_sample_index: u64,
    pub worst_tau_b: f64,
    pub worst_tau_sb: f64,
    /// Amplitudes of the worst state as `[re, im]` pairs, basis order.
    pub worst_state: Vec<[f64; 2]>,
}

struct BatchOutcome {
    violations: u64,
    max_margin: f64,
    worst_index: u64,
    worst: MarginSample,
    worst_state: Vec<[f64; 2]>,
}

fn singlet_sample(rng: &mut ChaCha8Rng) -> Result<StateVector> {
    let register = QubitRegister::new(3)?;
    let mut central = [cr(0.0); 2];
    let mut norm_sq = 0.0;
    for c in central.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *c = C64::new(re, im);
        norm_sq += c.norm_sqr();
    }
    let scale = cr(1.0 / (2.0 * norm_sq).sqrt());
    let mut amps = DVector::from_element(8, cr(0.0));
    // |s>_S (x) (|up down> - |down up>)/sqrt(2)
    for (s, &c) in central.iter().enumerate() {
        amps[s * 4 + 0b01] += c * scale;
        amps[s * 4 + 0b10] -= c * scale;
    }
    StateVector::new(register, amps)
}

fn run_batch(
    basis: &SymmetricBasis,
    ensemble: Ensemble,
    batch: u64,
    count: u64,
    seed: u64,
    tolerance: f64,
) -> Result<BatchOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut outcome = BatchOutcome {
        violations: 0,
        max_margin: f64::NEG_INFINITY,
        worst_index: 0,
        worst: MarginSample {
            tau_b: 0.0,
            tau_sb: 0.0,
            margin: f64::NEG_INFINITY,
        },
        worst_state: Vec::new(),
    };
    for k in 0..count {
        let psi = match ensemble {
            Ensemble::Symmetric => basis.sample(&mut rng)?,
            Ensemble::SingletN2 => singlet_sample(&mut rng)?,
        };
        let sample = sharing_margin(&psi)?;
        if sample.margin > tolerance {
            outcome.violations += 1;
        }
        if sample.margin > outcome.max_margin {
            outcome.max_margin = sample.margin;
            outcome.worst_index = batch * BATCH_SIZE + k;
            outcome.worst = sample;
            outcome.worst_state = psi
                .amplitudes()
                .iter()
                .map(|a| [a.re, a.im])
                .collect();
        }
    }
    Ok(outcome)
}

/// Monte-Carlo audit of the sharing inequality over `samples` Haar draws.
///
/// Deterministic in `(n_bath, samples, seed, tolerance, ensemble)`; the
/// worker count of the ambient rayon pool affects only wall time.
pub fn audit_inequality_with(
    n_bath: usize,
    samples: u64,
    seed: u64,
    tolerance: f64,
    ensemble: Ensemble,
) -> Result<SharingAudit> {
    check_sample_range(n_bath)?;
    if ensemble == Ensemble::SingletN2 && n_bath != 2 {
        return Err(Error::InvalidParameter(
            "the singlet ensemble is defined for N = 2 only".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::InvalidParameter(
            "tolerance must be a non-negative finite number".into(),
        ));
    }
    let basis = SymmetricBasis::new(n_bath)?;
    let n_batches = samples.div_ceil(BATCH_SIZE);
    let outcomes: Result<Vec<BatchOutcome>> = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let count = BATCH_SIZE.min(samples - batch * BATCH_SIZE);
            run_batch(&basis, ensemble, batch, count, seed, tolerance)
        })
        .collect();
    // fold in batch order; strict 'greater than' keeps the earliest worst
    // sample on ties, so the merge is order-insensitive in the pool
    let mut audit = SharingAudit {
        n_bath,
        samples,
        seed,
        tolerance,
        ensemble,
        violations: 0,
        max_margin_violation: f64::NEG_INFINITY,
        worst_sample_index: 0,
        worst_tau_b: 0.0,
        worst_tau_sb: 0.0,
        worst_state: Vec::new(),
    };
    for outcome in outcomes? {
        audit.violations += outcome.violations;
        if outcome.max_margin > audit.max_margin_violation {
            audit.max_margin_violation = outcome.max_margin;
            audit.worst_sample_index = outcome.worst_index;
            audit.worst_tau_b = outcome.worst.tau_b;
            audit.worst_tau_sb = outcome.worst.tau_sb;
            audit.worst_state = outcome.worst_state;
        }
    }
    Ok(audit)
}

/// [`audit_inequality_with`] on the symmetric ensemble.
pub fn audit_inequality(
    n_bath: usize,
    samples: u64,
    seed: u64,
    tolerance: f64,
) -> Result<SharingAudit> {
    audit_inequality_with(n_bath, samples, seed, tolerance, Ensemble::Symmetric)
}

/// One non-empty bin of the empirical frontier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontierBin {
    pub center: f64,
    pub max_tau_sb: f64,
    /// Sharing bound evaluated at the bin center.
    pub bound: f64,
}

const FRONTIER_BINS: usize = 100;

/// Empirical frontier: 100 uniform `tau_B` bins over `[0, 4/N^2]` with the
/// largest observed `tau_SB` per bin. Empty bins are absent from the output.
pub fn frontier_scan(n_bath: usize, samples: u64, seed: u64) -> Result<Vec<FrontierBin>> {
    check_sample_range(n_bath)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let basis = SymmetricBasis::new(n_bath)?;
    let n = n_bath as f64;
    let width = 4.0 / (n * n) / FRONTIER_BINS as f64;
    let n_batches = samples.div_ceil(BATCH_SIZE);
    let merged: Result<Vec<[f64; FRONTIER_BINS]>> = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let count = BATCH_SIZE.min(samples - batch * BATCH_SIZE);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch);
            let mut bins = [f64::NEG_INFINITY; FRONTIER_BINS];
            for _ in 0..count {
                let psi = basis.sample(&mut rng)?;
                let sample = sharing_margin(&psi)?;
                let idx = ((sample.tau_b / width) as usize).min(FRONTIER_BINS - 1);
                bins[idx] = bins[idx].max(sample.tau_sb);
            }
            Ok(bins)
        })
        .collect();
    let mut bins = [f64::NEG_INFINITY; FRONTIER_BINS];
    for batch_bins in merged? {
        for (acc, x) in bins.iter_mut().zip(batch_bins) {
            *acc = acc.max(x);
        }
    }
    Ok(bins
        .iter()
        .enumerate()
        .filter(|(_, &max)| max > f64::NEG_INFINITY)
        .map(|(i, &max_tau_sb)| {
            let center = (i as f64 + 0.5) * width;
            let bound = sharing_bound(center, n_bath)
                .map(|b| b.bound_tau_sb)
                .unwrap_or(0.0);
            FrontierBin {
                center,
                max_tau_sb,
                bound,
            }
        })
        .collect())
}
