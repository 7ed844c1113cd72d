//! WLAN-aware user selection: UTs that hear a co-channel AP too loudly are
//! skipped, the rest are ranked by a proportional-fair metric.

use alloc::vec::Vec;
#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;

use crate::propagation::LinkLoss;

/// Initial and floor value of the smoothed PF rates.
pub const PF_EPSILON: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct PfState {
    /// Exponentially smoothed served rate per UT (bps).
    pub avg_rate: Vec<f64>,
    /// Smoothing window `T` in intervals.
    pub window: f64,
}

impl PfState {
    pub fn new(n_uts: usize, window: f64) -> Self {
        Self {
            avg_rate: alloc::vec![PF_EPSILON; n_uts],
            window: window.max(1.0),
        }
    }
}

/// Large-scale RSSI (dBm) of each AP at one UT.
pub fn ap_rssi<'a>(ap_power_dbm: f64, links: impl IntoIterator<Item = &'a LinkLoss>) -> Vec<f64> {
    links
        .into_iter()
        .map(|l| ap_power_dbm - l.pathloss_db - l.shadowing_db)
        .collect()
}

/// Strongest report, `−∞` when the UT hears no AP.
pub fn max_rssi(report: &[f64]) -> f64 {
    report.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// UTs whose strongest AP is strictly below `threshold_dbm`.
pub fn eligible_uts(max_rssi_dbm: &[f64], threshold_dbm: f64) -> Vec<usize> {
    max_rssi_dbm
        .iter()
        .enumerate()
        .filter(|(_, r)| **r < threshold_dbm)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eligibility {
    pub uts: Vec<usize>,
    pub threshold_dbm: f64,
    /// The threshold had to be raised to find `n_u` UTs.
    pub degraded: bool,
}

/// Raises the threshold in `step_db` increments until `n_u` UTs qualify (or
/// every UT does).
pub fn eligible_with_relaxation(
    max_rssi_dbm: &[f64],
    threshold_dbm: f64,
    step_db: f64,
    n_u: usize,
) -> Eligibility {
    let want = n_u.min(max_rssi_dbm.len());
    let mut threshold = threshold_dbm;
    let mut uts = eligible_uts(max_rssi_dbm, threshold);
    let mut degraded = false;
    while uts.len() < want {
        degraded = true;
        // Jump straight to the next threshold that admits someone new.
        let next = max_rssi_dbm
            .iter()
            .copied()
            .filter(|r| *r >= threshold)
            .fold(f64::INFINITY, f64::min);
        let steps = ((next - threshold) / step_db).floor() + 1.0;
        threshold += steps.max(1.0) * step_db;
        uts = eligible_uts(max_rssi_dbm, threshold);
    }
    Eligibility {
        uts,
        threshold_dbm: threshold,
        degraded,
    }
}

/// Top `n_u` eligible UTs by `rate / avg`; ties go to the lower index.
pub fn pf_select(eligible: &[usize], instantaneous_rate: &[f64], state: &PfState, n_u: usize) -> Vec<usize> {
    let mut ranked: Vec<(f64, usize)> = eligible
        .iter()
        .map(|&k| (instantaneous_rate[k] / state.avg_rate[k], k))
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<usize> = ranked.into_iter().take(n_u).map(|(_, k)| k).collect();
    out.sort_unstable();
    out
}

/// `avg ← (1 − 1/T) avg + r/T` for every UT; pass 0 for unserved UTs.
pub fn update_pf(state: &mut PfState, served_rate: &[f64]) {
    let a = 1.0 / state.window;
    for (avg, r) in state.avg_rate.iter_mut().zip(served_rate) {
        *avg = ((1.0 - a) * *avg + a * r.max(0.0)).max(PF_EPSILON);
    }
}
