//! Channel access: null-filtered energy detection (eLBT), WLAN clear-channel
//! assessment and the adaptive null-count loop.

use crate::spatial::NullBasis;
use crate::units::mw_to_dbm;
use crate::C64;

/// `(1/N_A) Σ_w P_w ‖(I − U Uᴴ) g_w‖²` in mW.
pub fn filtered_power_mw<'a>(
    nulls: &NullBasis,
    active: impl IntoIterator<Item = (&'a [C64], f64)>,
) -> f64 {
    let n_a = nulls.n_antennas() as f64;
    active
        .into_iter()
        .map(|(g, p)| p * nulls.residual_power(g))
        .sum::<f64>()
        / n_a
}

/// Per-antenna-averaged aggregate power after nulling, in dBm.
///
/// Returns [`SENTINEL_DBM`] when nothing is active or everything was
/// suppressed.
pub fn measure_filtered_power<'a>(
    nulls: &NullBasis,
    active: impl IntoIterator<Item = (&'a [C64], f64)>,
) -> f64 {
    mw_to_dbm(filtered_power_mw(nulls, active))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElbtOutcome {
    pub measured_dbm: f64,
    pub threshold_dbm: f64,
    pub granted: bool,
    pub n_nulls_used: usize,
}

impl ElbtOutcome {
    pub fn new(measured_dbm: f64, threshold_dbm: f64, n_nulls_used: usize) -> Self {
        Self {
            measured_dbm,
            threshold_dbm,
            granted: elbt_decision(measured_dbm, threshold_dbm),
            n_nulls_used,
        }
    }
}

/// Access is granted iff the filtered energy is strictly below `gamma_bs_dbm`.
pub fn elbt_decision(measured_dbm: f64, gamma_bs_dbm: f64) -> bool {
    measured_dbm < gamma_bs_dbm
}

/// A WLAN device may transmit iff its aggregate interference is strictly
/// below `gamma_wlan_dbm`.
pub fn wlan_cca(interference_dbm: f64, gamma_wlan_dbm: f64) -> bool {
    interference_dbm < gamma_wlan_dbm
}

/// One sector's adaptive null allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullAdaptState {
    pub current_n_nulls: usize,
    pub consecutive_failures: u32,
    pub patience: u32,
    pub step: usize,
    pub max_n_nulls: usize,
}

impl NullAdaptState {
    pub fn new(initial: usize, patience: u32, step: usize, max_n_nulls: usize) -> Self {
        Self {
            current_n_nulls: initial.min(max_n_nulls),
            consecutive_failures: 0,
            patience: patience.max(1),
            step,
            max_n_nulls,
        }
    }
}

/// Feeds one eLBT verdict into the loop.
///
/// `patience` consecutive failures add `step` nulls (clamped at the maximum);
/// a success only clears the failure counter.
pub fn adapt_nulls(state: NullAdaptState, last: &ElbtOutcome) -> NullAdaptState {
    let mut next = state;
    if last.granted {
        next.consecutive_failures = 0;
        return next;
    }
    next.consecutive_failures += 1;
    if next.consecutive_failures >= next.patience {
        next.current_n_nulls = (next.current_n_nulls + next.step).min(next.max_n_nulls);
        next.consecutive_failures = 0;
    }
    next
}
