//! Tangle-based entanglement measures and the sharing bounds they obey.
//!
//! The tangle of a qubit pair is the squared Wootters concurrence; for a pure
//! state cut one qubit against the rest it reduces to `4 det rho`. For a
//! central spin against a permutation-symmetric bath the pairwise intra-bath
//! tangle caps the system-bath tangle, and W-class states saturate the cap.

mod bounds;
mod tangle;
mod wstate;

pub use bounds::{
    brute_force_max_taub, max_taub_given_tausb, mixed_sharing_bound, sharing_bound, Regime,
    SharingBound,
};
pub use tangle::{spin_flip, tangle_mixed_pair, tangle_pure_cut, three_tangle, three_tangle_from_cut};
pub use wstate::{w_state_vector, w_tangles, WStateParams};

/// Raw tangle values may poke out of [0, 1] by at most this much before the
/// excess is treated as a logic error instead of roundoff.
pub const TANGLE_ROUNDOFF_TOL: f64 = 1e-9;

pub(crate) fn clamp_tangle(raw: f64, context: &str) -> crate::error::Result<f64> {
    if !(-TANGLE_ROUNDOFF_TOL..=1.0 + TANGLE_ROUNDOFF_TOL).contains(&raw) {
        return Err(crate::error::Error::NumericalBreakdown(format!(
            "{context}: tangle {raw} outside [0, 1] beyond roundoff"
        )));
    }
    Ok(raw.clamp(0.0, 1.0))
}
