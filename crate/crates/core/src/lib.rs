//! Massive MIMO in unlicensed spectrum: a system-level simulation core.
//!
//! Base stations with large arrays share a 5 GHz channel with WLAN hotspots by
//! steering radiation nulls onto the dominant eigendirections of the WLAN
//! channel covariance. The same nulls filter the listen-before-talk energy
//! measurement (eLBT) and constrain a zero-forcing downlink precoder.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem, threads or the command line lives in the companion `mmimou-sim`
//! crate.
//!
//! Module map, bottom-up:
//!
//! * [`linalg`]: dense complex matrices and a Hermitian eigensolver.
//! * [`geometry`]: wrap-around 19-site hexagonal layout, UT and hotspot drops.
//! * [`propagation`]: path loss registry, shadowing, Ricean channel vectors.
//! * [`spatial`]: covariance, null basis, complement projection, projected
//!   zero-forcing, regulatory power.
//! * [`coexistence`]: eLBT and WLAN clear-channel assessment, adaptive nulls.
//! * [`scheduling`]: RSSI eligibility and proportional-fair selection.
//! * [`metrics`]: interference, SINR, rates, percentiles, campaign reports.
//! * [`engine`]: drops, campaigns and parameter sweeps.
#![no_std]

extern crate alloc;

pub mod coexistence;
pub mod config;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod metrics;
pub mod propagation;
pub mod rng;
pub mod scheduling;
pub mod selftest;
pub mod spatial;
pub mod units;

pub use config::{CovarianceMode, HotspotCountMode, NullPolicy, ScenarioConfig};
pub use engine::{run_campaign, run_drop, sweep, DropResult, SweepAxis};
pub use error::{Error, Result};
pub use metrics::MetricsReport;

/// Complex sample type used throughout the crate.
pub type C64 = num_complex::Complex64;
