//! dB / linear conversions.

#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;

/// Floor reported for any power that is zero or numerically annihilated.
pub const SENTINEL_DBM: f64 = -250.0;

pub fn db_to_lin(db: f64) -> f64 {
    10.0.powf(db / 10.0)
}

pub fn lin_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

pub fn dbm_to_mw(dbm: f64) -> f64 {
    db_to_lin(dbm)
}

/// Converts to dBm, clamping anything below [`SENTINEL_DBM`] (including zero)
/// to the sentinel.
pub fn mw_to_dbm(mw: f64) -> f64 {
    if !(mw > 0.0) {
        return SENTINEL_DBM;
    }
    lin_to_db(mw).max(SENTINEL_DBM)
}

/// Thermal noise power over `bandwidth_hz` with receiver noise figure.
pub fn noise_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> f64 {
    -174.0 + lin_to_db(bandwidth_hz) + noise_figure_db
}
