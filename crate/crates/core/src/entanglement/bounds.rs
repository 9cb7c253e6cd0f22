use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether the intra-bath tangle is small enough that the system-bath tangle
/// is unconstrained (bound 1), or large enough to actively cap it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Unconstrained,
    Constrained,
}

/// Evaluated sharing bound for a given intra-bath tangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharingBound {
    pub n_bath: usize,
    pub tau_b: f64,
    pub bound_tau_sb: f64,
    pub regime: Regime,
}

fn check_n_bath(n_bath: usize) -> Result<()> {
    if n_bath < 2 {
        return Err(Error::InvalidParameter(format!(
            "sharing bounds need at least two bath spins, got {n_bath}"
        )));
    }
    Ok(())
}

/// Upper bound on the system-bath tangle given the common pairwise tangle of
/// a symmetric `n_bath`-spin bath:
///
/// `tau_SB <= 1` for `tau_B <= 1/N^2`, else `tau_SB <= N (2 sqrt(tau_B) - N tau_B)`.
///
/// `tau_B` may not exceed `4/N^2`, the largest pairwise tangle a symmetric
/// bath admits; the bound is continuous at the breakpoint and reaches 0 at
/// the maximum.
pub fn sharing_bound(tau_b: f64, n_bath: usize) -> Result<SharingBound> {
    check_n_bath(n_bath)?;
    let n = n_bath as f64;
    let max_tau_b = 4.0 / (n * n);
    if !(0.0..=max_tau_b + 1e-12).contains(&tau_b) {
        return Err(Error::InvalidParameter(format!(
            "tau_b = {tau_b} outside [0, 4/N^2 = {max_tau_b}]"
        )));
    }
    let breakpoint = 1.0 / (n * n);
    let (bound, regime) = if tau_b <= breakpoint {
        (1.0, Regime::Unconstrained)
    } else {
        let raw = n * (2.0 * tau_b.sqrt() - n * tau_b);
        (raw.clamp(0.0, 1.0), Regime::Constrained)
    };
    Ok(SharingBound {
        n_bath,
        tau_b,
        bound_tau_sb: bound,
        regime,
    })
}

/// Largest intra-bath tangle compatible with a given system-bath tangle:
/// `(1/N^2) (1 + sqrt(1 - tau_SB))^2`. Inverse of [`sharing_bound`] on the
/// constrained branch.
pub fn max_taub_given_tausb(tau_sb: f64, n_bath: usize) -> Result<f64> {
    check_n_bath(n_bath)?;
    if !(0.0..=1.0).contains(&tau_sb) {
        return Err(Error::InvalidParameter(format!(
            "tau_sb = {tau_sb} outside [0, 1]"
        )));
    }
    let n = n_bath as f64;
    let s = (1.0 - tau_sb).sqrt();
    Ok((1.0 + s) * (1.0 + s) / (n * n))
}

/// Upper bound on the *minimal average* system-bath tangle of a mixed state
/// with intra-bath tangle `tau_b`.
///
/// Algebraically identical to [`sharing_bound`] (convexity of the tangle
/// carries the pure-state bound over), but named separately because it bounds
/// a convex-roof quantity this crate never evaluates directly.
pub fn mixed_sharing_bound(tau_b: f64, n_bath: usize) -> Result<f64> {
    sharing_bound(tau_b, n_bath).map(|b| b.bound_tau_sb)
}

/// Grid-search oracle for [`max_taub_given_tausb`].
///
/// Scans symmetric W-class parameters `a` in `(0, 1/sqrt(N)]` on a uniform
/// grid, allocates `c^2 = tau_sb / (4 N a^2)` wherever the normalization
/// budget allows it, and reports the largest `4 a^4` found. Independent of
/// the Lagrange closed form; agreement is O(1/grid_points).
pub fn brute_force_max_taub(tau_sb: f64, n_bath: usize, grid_points: usize) -> Result<f64> {
    check_n_bath(n_bath)?;
    if !(0.0..=1.0).contains(&tau_sb) {
        return Err(Error::InvalidParameter(format!(
            "tau_sb = {tau_sb} outside [0, 1]"
        )));
    }
    if grid_points < 1000 {
        return Err(Error::InvalidParameter(format!(
            "grid must have at least 1000 points, got {grid_points}"
        )));
    }
    let n = n_bath as f64;
    let a_max = 1.0 / n.sqrt();
    // The optimum sits on the d = 0 boundary; admit constraint violations
    // quadratic in the grid spacing so the boundary point is reachable.
    let feasibility_fuzz = 100.0 / (grid_points as f64 * grid_points as f64) + 1e-12;
    let mut best: Option<f64> = None;
    for j in 1..=grid_points {
        let a = a_max * (j as f64) / (grid_points as f64);
        let a_sq = a * a;
        let c_sq = if tau_sb == 0.0 {
            0.0
        } else {
            tau_sb / (4.0 * n * a_sq)
        };
        if n * a_sq + c_sq <= 1.0 + feasibility_fuzz {
            let tau_b = 4.0 * a_sq * a_sq;
            best = Some(best.map_or(tau_b, |b: f64| b.max(tau_b)));
        }
    }
    best.ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no grid point satisfies the normalization constraint for tau_sb = {tau_sb}"
        ))
    })
}
