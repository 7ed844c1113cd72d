//! Flat `key = value` scenario files.
//!
//! Keys are the [`ScenarioConfig`] field names. Missing keys keep their
//! defaults, unknown or repeated keys are errors. `#` starts a comment.
//!
//! Enumerated values:
//!
//! * `n_n`: a count, `auto` or `adaptive`
//! * `adapt_max_nulls`: a count or `auto`
//! * `hotspot_count_mode`: `fixed` or `poisson`
//! * `covariance_mode`: `perfect` or `samples:S`

use std::fmt::Write as _;
use std::str::FromStr;

use mmimou_core::{CovarianceMode, HotspotCountMode, NullPolicy, ScenarioConfig};
use sha2::{Digest, Sha256};

use crate::error::SimError;

/// Every key, in canonical order.
pub const KEYS: &[&str] = &[
    "n_a",
    "n_u",
    "n_n",
    "adapt_initial_nulls",
    "adapt_patience",
    "adapt_step",
    "adapt_max_nulls",
    "sites",
    "sectors_per_site",
    "isd_m",
    "bs_height_m",
    "device_height_m",
    "uts_per_sector",
    "hotspots_per_sector",
    "hotspot_count_mode",
    "hotspot_radius_m",
    "stas_per_hotspot",
    "ap_power_dbm",
    "sta_power_dbm",
    "num_channels",
    "bs_channel",
    "gamma_wlan_dbm",
    "gamma_bs_dbm",
    "rssi_threshold_dbm",
    "rssi_relax_step_db",
    "carrier_ghz",
    "bandwidth_mhz",
    "bs_link_model",
    "d2d_link_model",
    "bs_max_gain_dbi",
    "shadow_umi_los_db",
    "shadow_umi_nlos_db",
    "shadow_d2d_db",
    "ut_noise_figure_db",
    "bs_noise_figure_db",
    "covariance_mode",
    "hidden_fraction",
    "elbt_include_noise",
    "wlan_ut_fast_fading",
    "se_cap_bps_hz",
    "pf_window",
    "drops",
    "intervals_per_drop",
    "master_seed",
];

fn num<T: FromStr>(key: &str, v: &str) -> Result<T, SimError> {
    v.parse()
        .map_err(|_| SimError::Config(format!("{key}: cannot parse {v:?}")))
}

fn boolean(key: &str, v: &str) -> Result<bool, SimError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(SimError::Config(format!("{key}: expected true or false, got {v:?}"))),
    }
}

/// Sets one field from its textual value.
pub fn set(c: &mut ScenarioConfig, key: &str, v: &str) -> Result<(), SimError> {
    let v = v.trim();
    match key {
        "n_a" => c.n_a = num(key, v)?,
        "n_u" => c.n_u = num(key, v)?,
        "n_n" => {
            c.n_n = match v {
                "auto" => NullPolicy::Auto,
                "adaptive" => NullPolicy::Adaptive,
                _ => NullPolicy::Fixed(num(key, v)?),
            }
        }
        "adapt_initial_nulls" => c.adapt_initial_nulls = num(key, v)?,
        "adapt_patience" => c.adapt_patience = num(key, v)?,
        "adapt_step" => c.adapt_step = num(key, v)?,
        "adapt_max_nulls" => {
            c.adapt_max_nulls = if v == "auto" { None } else { Some(num(key, v)?) }
        }
        "sites" => c.sites = num(key, v)?,
        "sectors_per_site" => c.sectors_per_site = num(key, v)?,
        "isd_m" => c.isd_m = num(key, v)?,
        "bs_height_m" => c.bs_height_m = num(key, v)?,
        "device_height_m" => c.device_height_m = num(key, v)?,
        "uts_per_sector" => c.uts_per_sector = num(key, v)?,
        "hotspots_per_sector" => c.hotspots_per_sector = num(key, v)?,
        "hotspot_count_mode" => {
            c.hotspot_count_mode = match v {
                "fixed" => HotspotCountMode::Fixed,
                "poisson" => HotspotCountMode::Poisson,
                _ => return Err(SimError::Config(format!("{key}: expected fixed or poisson, got {v:?}"))),
            }
        }
        "hotspot_radius_m" => c.hotspot_radius_m = num(key, v)?,
        "stas_per_hotspot" => c.stas_per_hotspot = num(key, v)?,
        "ap_power_dbm" => c.ap_power_dbm = num(key, v)?,
        "sta_power_dbm" => c.sta_power_dbm = num(key, v)?,
        "num_channels" => c.num_channels = num(key, v)?,
        "bs_channel" => c.bs_channel = num(key, v)?,
        "gamma_wlan_dbm" => c.gamma_wlan_dbm = num(key, v)?,
        "gamma_bs_dbm" => c.gamma_bs_dbm = num(key, v)?,
        "rssi_threshold_dbm" => c.rssi_threshold_dbm = num(key, v)?,
        "rssi_relax_step_db" => c.rssi_relax_step_db = num(key, v)?,
        "carrier_ghz" => c.carrier_ghz = num(key, v)?,
        "bandwidth_mhz" => c.bandwidth_mhz = num(key, v)?,
        "bs_link_model" => c.bs_link_model = v.to_string(),
        "d2d_link_model" => c.d2d_link_model = v.to_string(),
        "bs_max_gain_dbi" => c.bs_max_gain_dbi = num(key, v)?,
        "shadow_umi_los_db" => c.shadow_umi_los_db = num(key, v)?,
        "shadow_umi_nlos_db" => c.shadow_umi_nlos_db = num(key, v)?,
        "shadow_d2d_db" => c.shadow_d2d_db = num(key, v)?,
        "ut_noise_figure_db" => c.ut_noise_figure_db = num(key, v)?,
        "bs_noise_figure_db" => c.bs_noise_figure_db = num(key, v)?,
        "covariance_mode" => {
            c.covariance_mode = match v.split_once(':') {
                None if v == "perfect" => CovarianceMode::Perfect,
                Some(("samples", s)) => CovarianceMode::Samples {
                    symbols: num(key, s.trim())?,
                },
                _ => {
                    return Err(SimError::Config(format!(
                        "{key}: expected perfect or samples:S, got {v:?}"
                    )))
                }
            }
        }
        "hidden_fraction" => c.hidden_fraction = num(key, v)?,
        "elbt_include_noise" => c.elbt_include_noise = boolean(key, v)?,
        "wlan_ut_fast_fading" => c.wlan_ut_fast_fading = boolean(key, v)?,
        "se_cap_bps_hz" => c.se_cap_bps_hz = num(key, v)?,
        "pf_window" => c.pf_window = num(key, v)?,
        "drops" => c.drops = num(key, v)?,
        "intervals_per_drop" => c.intervals_per_drop = num(key, v)?,
        "master_seed" => c.master_seed = num(key, v)?,
        _ => return Err(SimError::Config(format!("unknown key {key:?}"))),
    }
    Ok(())
}

/// Textual value of one field.
pub fn get(c: &ScenarioConfig, key: &str) -> Option<String> {
    Some(match key {
        "n_a" => c.n_a.to_string(),
        "n_u" => c.n_u.to_string(),
        "n_n" => match c.n_n {
            NullPolicy::Fixed(n) => n.to_string(),
            NullPolicy::Auto => "auto".into(),
            NullPolicy::Adaptive => "adaptive".into(),
        },
        "adapt_initial_nulls" => c.adapt_initial_nulls.to_string(),
        "adapt_patience" => c.adapt_patience.to_string(),
        "adapt_step" => c.adapt_step.to_string(),
        "adapt_max_nulls" => c.adapt_max_nulls.map_or_else(|| "auto".into(), |n| n.to_string()),
        "sites" => c.sites.to_string(),
        "sectors_per_site" => c.sectors_per_site.to_string(),
        "isd_m" => c.isd_m.to_string(),
        "bs_height_m" => c.bs_height_m.to_string(),
        "device_height_m" => c.device_height_m.to_string(),
        "uts_per_sector" => c.uts_per_sector.to_string(),
        "hotspots_per_sector" => c.hotspots_per_sector.to_string(),
        "hotspot_count_mode" => match c.hotspot_count_mode {
            HotspotCountMode::Fixed => "fixed".into(),
            HotspotCountMode::Poisson => "poisson".into(),
        },
        "hotspot_radius_m" => c.hotspot_radius_m.to_string(),
        "stas_per_hotspot" => c.stas_per_hotspot.to_string(),
        "ap_power_dbm" => c.ap_power_dbm.to_string(),
        "sta_power_dbm" => c.sta_power_dbm.to_string(),
        "num_channels" => c.num_channels.to_string(),
        "bs_channel" => c.bs_channel.to_string(),
        "gamma_wlan_dbm" => c.gamma_wlan_dbm.to_string(),
        "gamma_bs_dbm" => c.gamma_bs_dbm.to_string(),
        "rssi_threshold_dbm" => c.rssi_threshold_dbm.to_string(),
        "rssi_relax_step_db" => c.rssi_relax_step_db.to_string(),
        "carrier_ghz" => c.carrier_ghz.to_string(),
        "bandwidth_mhz" => c.bandwidth_mhz.to_string(),
        "bs_link_model" => c.bs_link_model.clone(),
        "d2d_link_model" => c.d2d_link_model.clone(),
        "bs_max_gain_dbi" => c.bs_max_gain_dbi.to_string(),
        "shadow_umi_los_db" => c.shadow_umi_los_db.to_string(),
        "shadow_umi_nlos_db" => c.shadow_umi_nlos_db.to_string(),
        "shadow_d2d_db" => c.shadow_d2d_db.to_string(),
        "ut_noise_figure_db" => c.ut_noise_figure_db.to_string(),
        "bs_noise_figure_db" => c.bs_noise_figure_db.to_string(),
        "covariance_mode" => match c.covariance_mode {
            CovarianceMode::Perfect => "perfect".into(),
            CovarianceMode::Samples { symbols } => format!("samples:{symbols}"),
        },
        "hidden_fraction" => c.hidden_fraction.to_string(),
        "elbt_include_noise" => c.elbt_include_noise.to_string(),
        "wlan_ut_fast_fading" => c.wlan_ut_fast_fading.to_string(),
        "se_cap_bps_hz" => c.se_cap_bps_hz.to_string(),
        "pf_window" => c.pf_window.to_string(),
        "drops" => c.drops.to_string(),
        "intervals_per_drop" => c.intervals_per_drop.to_string(),
        "master_seed" => c.master_seed.to_string(),
        _ => return None,
    })
}

/// Parses a config file body on top of the defaults.
pub fn parse(text: &str) -> Result<ScenarioConfig, SimError> {
    let mut c = ScenarioConfig::default();
    let mut seen = std::collections::HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| SimError::Config(format!("line {}: expected key = value", n + 1)))?;
        let key = key.trim();
        if !seen.insert(key.to_string()) {
            return Err(SimError::Config(format!("line {}: duplicate key {key:?}", n + 1)));
        }
        set(&mut c, key, value).map_err(|e| match e {
            SimError::Config(m) => SimError::Config(format!("line {}: {m}", n + 1)),
            other => other,
        })?;
    }
    Ok(c)
}

/// Applies `key=value` overrides.
pub fn apply_overrides(c: &mut ScenarioConfig, overrides: &[String]) -> Result<(), SimError> {
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| SimError::Config(format!("--set expects key=value, got {o:?}")))?;
        set(c, k.trim(), v)?;
    }
    Ok(())
}

/// Canonical text: every key in [`KEYS`] order, one `key = value` per line.
pub fn to_text(c: &ScenarioConfig) -> String {
    let mut out = String::new();
    for k in KEYS {
        let v = get(c, k).expect("every key has a value");
        writeln!(out, "{k} = {v}").expect("writing to a String");
    }
    out
}

/// SHA-256 of the canonical text, hex encoded.
pub fn config_hash(c: &ScenarioConfig) -> String {
    hex::encode(Sha256::digest(to_text(c).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = ScenarioConfig::default();
        let text = to_text(&c);
        assert_eq!(parse(&text).unwrap(), c);
        assert_eq!(text.lines().count(), KEYS.len());
    }

    #[test]
    fn comments_blank_lines_and_partial_files() {
        let c = parse("# scenario\n\nn_a = 32   # smaller array\nn_n=adaptive\n").unwrap();
        assert_eq!(c.n_a, 32);
        assert_eq!(c.n_n, NullPolicy::Adaptive);
        assert_eq!(c.n_u, 8);
    }

    #[test]
    fn enumerated_values() {
        let c = parse("covariance_mode = samples:100\nhotspot_count_mode = poisson\nadapt_max_nulls = 20\n").unwrap();
        assert_eq!(c.covariance_mode, CovarianceMode::Samples { symbols: 100 });
        assert_eq!(c.hotspot_count_mode, HotspotCountMode::Poisson);
        assert_eq!(c.adapt_max_nulls, Some(20));
        assert_eq!(parse(&to_text(&c)).unwrap(), c);
    }

    #[test]
    fn errors() {
        for bad in [
            "bogus = 1",
            "n_a = many",
            "n_a",
            "n_a = 4\nn_a = 8",
            "elbt_include_noise = yes",
            "covariance_mode = samples",
        ] {
            assert!(matches!(parse(bad), Err(SimError::Config(_))), "{bad}");
        }
    }

    #[test]
    fn every_key_is_settable() {
        let c = ScenarioConfig::default();
        for k in KEYS {
            let mut d = ScenarioConfig::default();
            set(&mut d, k, &get(&c, k).unwrap()).unwrap();
            assert_eq!(d, c, "{k}");
        }
        assert!(get(&c, "nope").is_none());
    }

    #[test]
    fn hash_tracks_content() {
        let a = ScenarioConfig::default();
        let b = ScenarioConfig { n_a: 32, ..Default::default() };
        assert_eq!(config_hash(&a), config_hash(&a.clone()));
        assert_ne!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 64);
    }
}
