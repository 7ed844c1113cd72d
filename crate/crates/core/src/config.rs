//! Scenario parameters.
//!
//! Defaults reproduce the outdoor evaluation: 19 sites with 3 sectors at
//! 150 m inter-site distance, 24 UTs per sector of which 8 are served, WLAN
//! hotspots of radius 10 m with one AP and eight STAs on four 20 MHz channels
//! at 5.2 GHz, AP/STA powers 24/18 dBm, and energy thresholds of −62 dBm
//! (WLAN) and −72 dBm (BS).

use alloc::format;
use alloc::string::{String, ToString};
#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;

use crate::error::{Error, Result};
use crate::propagation::pathloss_model;

/// How many spatial degrees of freedom a sector spends on radiation nulls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullPolicy {
    /// A fixed count.
    Fixed(usize),
    /// `round(0.75 · (N_A − N_U))`.
    Auto,
    /// Start at `adapt_initial_nulls` and grow on repeated eLBT failures.
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovarianceMode {
    /// Exact `Σ P g gᴴ` of the visible WLAN devices.
    Perfect,
    /// Average of `symbols` received snapshots with thermal noise.
    Samples { symbols: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HotspotCountMode {
    /// `floor(density)` hotspots plus one more with probability `frac(density)`.
    Fixed,
    Poisson,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub n_a: usize,
    pub n_u: usize,
    pub n_n: NullPolicy,
    pub adapt_initial_nulls: usize,
    pub adapt_patience: u32,
    pub adapt_step: usize,
    /// `None` means `N_A − N_U`.
    pub adapt_max_nulls: Option<usize>,

    pub sites: usize,
    pub sectors_per_site: usize,
    pub isd_m: f64,
    pub bs_height_m: f64,
    pub device_height_m: f64,
    pub uts_per_sector: usize,

    pub hotspots_per_sector: f64,
    pub hotspot_count_mode: HotspotCountMode,
    pub hotspot_radius_m: f64,
    pub stas_per_hotspot: usize,
    pub ap_power_dbm: f64,
    pub sta_power_dbm: f64,
    pub num_channels: usize,
    /// Channel the cellular network operates on.
    pub bs_channel: usize,

    pub gamma_wlan_dbm: f64,
    pub gamma_bs_dbm: f64,
    pub rssi_threshold_dbm: f64,
    pub rssi_relax_step_db: f64,

    pub carrier_ghz: f64,
    pub bandwidth_mhz: f64,
    pub bs_link_model: String,
    pub d2d_link_model: String,
    pub bs_max_gain_dbi: f64,
    pub shadow_umi_los_db: f64,
    pub shadow_umi_nlos_db: f64,
    pub shadow_d2d_db: f64,
    pub ut_noise_figure_db: f64,
    pub bs_noise_figure_db: f64,

    pub covariance_mode: CovarianceMode,
    /// Fraction of STAs that never transmit and so never enter the covariance.
    pub hidden_fraction: f64,
    pub elbt_include_noise: bool,
    pub wlan_ut_fast_fading: bool,

    pub se_cap_bps_hz: f64,
    pub pf_window: f64,

    pub drops: usize,
    pub intervals_per_drop: usize,
    pub master_seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            n_a: 64,
            n_u: 8,
            n_n: NullPolicy::Auto,
            adapt_initial_nulls: 0,
            adapt_patience: 3,
            adapt_step: 4,
            adapt_max_nulls: None,
            sites: 19,
            sectors_per_site: 3,
            isd_m: 150.0,
            bs_height_m: 10.0,
            device_height_m: 1.5,
            uts_per_sector: 24,
            hotspots_per_sector: 2.0,
            hotspot_count_mode: HotspotCountMode::Fixed,
            hotspot_radius_m: 10.0,
            stas_per_hotspot: 8,
            ap_power_dbm: 24.0,
            sta_power_dbm: 18.0,
            num_channels: 4,
            bs_channel: 0,
            gamma_wlan_dbm: -62.0,
            gamma_bs_dbm: -72.0,
            rssi_threshold_dbm: -62.0,
            rssi_relax_step_db: 3.0,
            carrier_ghz: 5.2,
            bandwidth_mhz: 20.0,
            bs_link_model: "umi".to_string(),
            d2d_link_model: "d2d".to_string(),
            bs_max_gain_dbi: 14.0,
            shadow_umi_los_db: 3.0,
            shadow_umi_nlos_db: 4.0,
            shadow_d2d_db: 7.0,
            ut_noise_figure_db: 9.0,
            bs_noise_figure_db: 5.0,
            covariance_mode: CovarianceMode::Perfect,
            hidden_fraction: 0.0,
            elbt_include_noise: false,
            wlan_ut_fast_fading: false,
            se_cap_bps_hz: 7.8,
            pf_window: 100.0,
            drops: 200,
            intervals_per_drop: 10,
            master_seed: 1,
        }
    }
}

/// `round(0.75 · (N_A − N_U))`, the default null allocation.
pub fn default_null_count(n_a: usize, n_u: usize) -> usize {
    (0.75 * n_a.saturating_sub(n_u) as f64).round() as usize
}

impl ScenarioConfig {
    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_mhz * 1e6
    }

    pub fn max_nulls(&self) -> usize {
        self.adapt_max_nulls
            .unwrap_or_else(|| self.n_a.saturating_sub(self.n_u))
    }

    /// Null count at the start of every drop.
    pub fn initial_nulls(&self) -> usize {
        match self.n_n {
            NullPolicy::Fixed(n) => n,
            NullPolicy::Auto => default_null_count(self.n_a, self.n_u),
            NullPolicy::Adaptive => self.adapt_initial_nulls,
        }
    }

    /// Largest null count any sector can reach.
    pub fn peak_nulls(&self) -> usize {
        match self.n_n {
            NullPolicy::Adaptive => self.max_nulls(),
            _ => self.initial_nulls(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_a == 0 || self.n_u == 0 {
            return bad(format!("n_a = {} and n_u = {} must be ≥ 1", self.n_a, self.n_u));
        }
        let nulls = self.peak_nulls();
        if nulls > self.n_a || self.n_a - nulls < self.n_u {
            return Err(Error::InsufficientDof {
                available: self.n_a.saturating_sub(nulls),
                streams: self.n_u,
            });
        }
        if let NullPolicy::Adaptive = self.n_n {
            if self.adapt_initial_nulls > self.max_nulls() {
                return bad(format!(
                    "adapt_initial_nulls = {} exceeds adapt_max_nulls = {}",
                    self.adapt_initial_nulls,
                    self.max_nulls()
                ));
            }
            if self.adapt_patience == 0 {
                return bad("adapt_patience must be ≥ 1".to_string());
            }
        }
        if self.sites != crate::geometry::SITES || self.sectors_per_site != 3 {
            return bad(format!(
                "only the 19-site, 3-sector wrap-around layout is supported (got {} sites, {} sectors/site)",
                self.sites, self.sectors_per_site
            ));
        }
        if !(self.isd_m > 0.0) {
            return bad(format!("isd_m must be positive, got {}", self.isd_m));
        }
        if self.uts_per_sector < self.n_u {
            return bad(format!(
                "uts_per_sector = {} is smaller than n_u = {}",
                self.uts_per_sector, self.n_u
            ));
        }
        if !(self.hotspots_per_sector >= 0.0 && self.hotspots_per_sector.is_finite()) {
            return bad(format!(
                "hotspots_per_sector must be ≥ 0, got {}",
                self.hotspots_per_sector
            ));
        }
        if !(0.0..=1.0).contains(&self.hidden_fraction) {
            return bad(format!(
                "hidden_fraction must lie in [0, 1], got {}",
                self.hidden_fraction
            ));
        }
        if self.num_channels == 0 || self.num_channels > 255 || self.bs_channel >= self.num_channels {
            return bad(format!(
                "bs_channel = {} must be below num_channels = {}",
                self.bs_channel, self.num_channels
            ));
        }
        if self.drops == 0 || self.intervals_per_drop == 0 {
            return bad("drops and intervals_per_drop must be ≥ 1".to_string());
        }
        if !(self.carrier_ghz > 0.0 && self.bandwidth_mhz > 0.0) {
            return bad("carrier_ghz and bandwidth_mhz must be positive".to_string());
        }
        if !(self.pf_window >= 1.0) {
            return bad(format!("pf_window must be ≥ 1, got {}", self.pf_window));
        }
        if !(self.rssi_relax_step_db > 0.0) {
            return bad("rssi_relax_step_db must be positive".to_string());
        }
        if let CovarianceMode::Samples { symbols: 0 } = self.covariance_mode {
            return bad("covariance sample count must be ≥ 1".to_string());
        }
        pathloss_model(&self.bs_link_model)?;
        pathloss_model(&self.d2d_link_model)?;
        Ok(())
    }
}
