//! Drops, campaigns and parameter sweeps.
//!
//! A drop places UTs and hotspots, draws large-scale fading and the
//! quasi-static BS-to-WLAN channels, factorizes every sector's WLAN covariance
//! once and elects one active device per co-channel hotspot. It then runs
//! `intervals_per_drop` scheduling intervals. Each interval runs eLBT in every
//! sector, redraws UT fast fading, selects UTs, precodes and records:
//!
//! * the null-filtered power measured by each sector,
//! * the interference received by every co-channel WLAN device with all
//!   sectors transmitting,
//! * the downlink rate of each sector, zero when eLBT failed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;
use core::str::FromStr;

use rand::Rng;
use rand_distr::Exp1;

use crate::coexistence::{adapt_nulls, filtered_power_mw, ElbtOutcome, NullAdaptState};
use crate::config::{CovarianceMode, NullPolicy, ScenarioConfig};
use crate::error::{Error, Result};
use crate::geometry::{build_deployment, Deployment, Point};
use crate::linalg::{norm_sqr, CMat, HermitianEigen};
use crate::metrics::{sector_rate, ut_sinr, wlan_device_interference_mw, MetricsReport};
use crate::propagation::{
    draw_link_loss, fill_channel, pathloss_model, sector_antenna_gain_db, wrap_deg, LinkLoss,
    Shadowing,
};
use crate::rng::{drop_seed, keyed, stream, Stream};
use crate::scheduling::{eligible_with_relaxation, max_rssi, pf_select, update_pf, Eligibility, PfState};
use crate::spatial::{
    regulatory_power_mw, sample_covariance, true_covariance, zf_precoder, NullBasis, Precoder,
};
use crate::units::{dbm_to_mw, mw_to_dbm, noise_dbm};
use crate::C64;

/// Fading redraws allowed for one sector-interval before giving up.
const MAX_REDRAWS: usize = 16;

/// Everything recorded in one drop.
#[derive(Debug, Clone, PartialEq)]
pub struct DropResult {
    pub drop_index: u64,
    pub seed: u64,
    pub intervals: usize,
    /// `[interval][sector]`
    pub elbt: Vec<Vec<ElbtOutcome>>,
    /// Visible co-channel devices, interval-major.
    pub wlan_intf_dbm: Vec<f64>,
    /// Masked STAs, interval-major.
    pub masked_intf_dbm: Vec<f64>,
    /// Interval-major, sector-minor.
    pub sector_rate_bps: Vec<f64>,
    /// Sector-intervals where the RSSI threshold had to be relaxed.
    pub degraded_intervals: usize,
    pub fading_redraws: usize,
}

impl DropResult {
    pub fn grant_rate(&self) -> f64 {
        let (g, n) = self.elbt.iter().flatten().fold((0usize, 0usize), |(g, n), o| {
            (g + usize::from(o.granted), n + 1)
        });
        if n == 0 {
            0.0
        } else {
            g as f64 / n as f64
        }
    }

    /// Median interference over the masked STAs, if there are any.
    pub fn masked_median_dbm(&self) -> Option<f64> {
        crate::metrics::percentile(&self.masked_intf_dbm, 50.0).ok()
    }
}

#[derive(Debug, Clone, Copy)]
struct Device {
    pos: Point,
    power_mw: f64,
    is_ap: bool,
    masked: bool,
}

/// Large-scale state shared by every interval of a drop.
struct DropState {
    n_sectors: usize,
    sector_site: Vec<usize>,
    uts_per_sector: usize,
    devices: Vec<Device>,
    /// Per co-channel hotspot: indices of its devices that can transmit.
    candidates: Vec<Vec<usize>>,
    /// `[sector]`: N_A × devices.
    wlan_channels: Vec<CMat>,
    /// `[sector]`, only when some sector may place nulls.
    eigen: Vec<Option<HermitianEigen>>,
    /// `[site][ut]` over all UTs (sector-major).
    ut_loss: Vec<Vec<LinkLoss>>,
    /// `[sector][ut]` departure angle off boresight.
    ut_theta: Vec<Vec<f64>>,
    /// `[sector][ut]` large-scale gain including the element pattern.
    ut_gain: Vec<Vec<f64>>,
    /// `[ut][device]` linear D2D gain.
    ut_device_gain: Vec<Vec<f64>>,
    eligibility: Vec<Eligibility>,
}

fn site_sector(dep: &Deployment, s: usize) -> (usize, f64) {
    let sec = dep.layout.sectors[s];
    (sec.site, sec.azimuth_deg)
}

fn build_state(config: &ScenarioConfig, seed: u64) -> Result<DropState> {
    let dep = build_deployment(config, &mut stream(seed, Stream::Geometry))?;
    let bs_model = pathloss_model(&config.bs_link_model)?;
    let d2d_model = pathloss_model(&config.d2d_link_model)?;
    let fc = config.carrier_ghz;
    let n_a = config.n_a;
    let n_sectors = dep.sector_count();
    let n_sites = dep.layout.sites.len();
    let dh = config.bs_height_m - config.device_height_m;

    let mut activity = keyed(seed, &[Stream::Activity as u64, 0]);
    let mut devices = Vec::new();
    let mut candidates = Vec::new();
    for h in dep.hotspots.iter().filter(|h| h.channel as usize == config.bs_channel) {
        let mut cand = vec![devices.len()];
        devices.push(Device {
            pos: h.ap,
            power_mw: dbm_to_mw(config.ap_power_dbm),
            is_ap: true,
            masked: false,
        });
        for &p in &h.stas {
            let masked = activity.random::<f64>() < config.hidden_fraction;
            if !masked {
                cand.push(devices.len());
            }
            devices.push(Device {
                pos: p,
                power_mw: dbm_to_mw(config.sta_power_dbm),
                    is_ap: false,
                masked,
            });
        }
        candidates.push(cand);
    }

    let umi_shadow = Shadowing {
        los_db: config.shadow_umi_los_db,
        nlos_db: config.shadow_umi_nlos_db,
    };
    let d2d_shadow = Shadowing {
        los_db: config.shadow_d2d_db,
        nlos_db: config.shadow_d2d_db,
    };

    // BS-to-WLAN links: large-scale per site, channel per sector.
    let mut ls = stream(seed, Stream::LargeScale);
    let mut fading = stream(seed, Stream::WlanFading);
    let mut wlan_channels: Vec<CMat> = (0..n_sectors).map(|_| CMat::zeros(n_a, devices.len())).collect();
    let mut buf = Vec::with_capacity(n_a);
    for (j, dev) in devices.iter().enumerate() {
        for site in 0..n_sites {
            let off = dep.layout.wrap_offset(dep.layout.sites[site], dev.pos);
            let d2 = off.norm();
            let d3 = d2.hypot(dh);
            let loss = draw_link_loss(bs_model, d2, d3, fc, umi_shadow, &mut ls);
            for s in (0..n_sectors).filter(|&s| dep.layout.sectors[s].site == site) {
                let theta = wrap_deg(off.azimuth_deg() - dep.layout.sectors[s].azimuth_deg);
                fill_channel(theta, &loss, n_a, config.bs_max_gain_dbi, &mut fading, &mut buf);
                wlan_channels[s].col_mut(j).copy_from_slice(&buf);
            }
        }
    }

    let visible = |j: usize| !devices[j].masked;
    let eigen = if config.peak_nulls() == 0 {
        (0..n_sectors).map(|_| None).collect()
    } else {
        let noise_mw = dbm_to_mw(noise_dbm(config.bandwidth_hz(), config.bs_noise_figure_db));
        let mut out = Vec::with_capacity(n_sectors);
        for (s, g) in wlan_channels.iter().enumerate() {
            let devs = (0..devices.len())
                .filter(|&j| visible(j))
                .map(|j| (g.col(j), devices[j].power_mw));
            let r = match config.covariance_mode {
                CovarianceMode::Perfect => true_covariance(n_a, devs)?,
                CovarianceMode::Samples { symbols } => {
                    let mut rng = keyed(seed, &[Stream::Covariance as u64, s as u64]);
                    sample_covariance(n_a, devs, symbols, noise_mw, &mut rng)?
                }
            };
            out.push(Some(HermitianEigen::new(&r.matrix)?));
        }
        out
    };

    // BS-to-UT large scale, shared by the sectors of a site.
    let uts: Vec<Point> = dep.ut_positions.iter().flatten().copied().collect();
    let mut ut_loss = vec![Vec::with_capacity(uts.len()); n_sites];
    let mut ut_offsets = vec![Vec::with_capacity(uts.len()); n_sites];
    for &u in &uts {
        for site in 0..n_sites {
            let off = dep.layout.wrap_offset(dep.layout.sites[site], u);
            let d2 = off.norm();
            ut_loss[site].push(draw_link_loss(bs_model, d2, d2.hypot(dh), fc, umi_shadow, &mut ls));
            ut_offsets[site].push(off);
        }
    }
    let mut ut_theta = Vec::with_capacity(n_sectors);
    let mut ut_gain = Vec::with_capacity(n_sectors);
    for s in 0..n_sectors {
        let (site, az) = site_sector(&dep, s);
        let theta: Vec<f64> = ut_offsets[site]
            .iter()
            .map(|o| wrap_deg(o.azimuth_deg() - az))
            .collect();
        ut_gain.push(
            theta
                .iter()
                .zip(&ut_loss[site])
                .map(|(&t, l)| l.gain(sector_antenna_gain_db(t, config.bs_max_gain_dbi)))
                .collect(),
        );
        ut_theta.push(theta);
    }

    // UT-to-WLAN large scale; feeds RSSI reports and WLAN-to-UT interference.
    let mut w2u = stream(seed, Stream::WlanToUt);
    let mut ut_device_gain = Vec::with_capacity(uts.len());
    let mut ut_max_rssi = Vec::with_capacity(uts.len());
    for &u in &uts {
        let mut gains = Vec::with_capacity(devices.len());
        let mut rssi = Vec::new();
        for dev in &devices {
            let d = dep.layout.wrap_distance(u, dev.pos);
            let l = draw_link_loss(d2d_model, d, d, fc, d2d_shadow, &mut w2u);
            gains.push(l.gain(0.0));
            if dev.is_ap {
                rssi.push(config.ap_power_dbm - l.pathloss_db - l.shadowing_db);
            }
        }
        ut_max_rssi.push(max_rssi(&rssi));
        ut_device_gain.push(gains);
    }
    let k = config.uts_per_sector;
    let eligibility = (0..n_sectors)
        .map(|s| {
            eligible_with_relaxation(
                &ut_max_rssi[s * k..(s + 1) * k],
                config.rssi_threshold_dbm,
                config.rssi_relax_step_db,
                config.n_u,
            )
        })
        .collect();

    Ok(DropState {
        n_sectors,
        sector_site: dep.layout.sectors.iter().map(|s| s.site).collect(),
        uts_per_sector: k,
        devices,
        candidates,
        wlan_channels,
        eigen,
        ut_loss,
        ut_theta,
        ut_gain,
        ut_device_gain,
        eligibility,
    })
}

fn null_basis_for(state: &DropState, s: usize, n_a: usize, n_nulls: usize) -> Result<NullBasis> {
    match (&state.eigen[s], n_nulls) {
        (_, 0) | (None, _) => Ok(NullBasis::empty(n_a)),
        (Some(e), n) => NullBasis::from_eigen(e, n),
    }
}

/// One sector's transmission plan for an interval.
struct SectorPlan {
    precoder: Precoder,
    /// Global UT indices, one per precoder column.
    served: Vec<usize>,
    channels: Vec<Vec<C64>>,
    granted: bool,
}

/// Runs one drop. Identical `(config, drop_index)` always gives an identical
/// result.
pub fn run_drop(config: &ScenarioConfig, drop_index: u64) -> Result<DropResult> {
    config.validate()?;
    let seed = drop_seed(config.master_seed, drop_index);
    let state = build_state(config, seed)?;
    let n_a = config.n_a;
    let n_u = config.n_u;
    let k_per = state.uts_per_sector;
    let bw = config.bandwidth_hz();
    let noise_ut = dbm_to_mw(noise_dbm(bw, config.ut_noise_figure_db));
    let noise_bs = dbm_to_mw(noise_dbm(bw, config.bs_noise_figure_db));

    let mut null_state: Vec<NullAdaptState> = (0..state.n_sectors)
        .map(|_| {
            NullAdaptState::new(
                config.initial_nulls(),
                config.adapt_patience,
                config.adapt_step,
                config.max_nulls(),
            )
        })
        .collect();
    let mut pf: Vec<PfState> = (0..state.n_sectors)
        .map(|_| PfState::new(k_per, config.pf_window))
        .collect();

    let mut out = DropResult {
        drop_index,
        seed,
        intervals: config.intervals_per_drop,
        elbt: Vec::with_capacity(config.intervals_per_drop),
        wlan_intf_dbm: Vec::new(),
        masked_intf_dbm: Vec::new(),
        sector_rate_bps: Vec::with_capacity(config.intervals_per_drop * state.n_sectors),
        degraded_intervals: 0,
        fading_redraws: 0,
    };

    // One device per co-channel hotspot holds the medium for the whole drop.
    let mut act = keyed(seed, &[Stream::Activity as u64, 1]);
    let active: Vec<usize> = state
        .candidates
        .iter()
        .map(|c| c[act.random_range(0..c.len())])
        .collect();

    let mut h_buf = Vec::with_capacity(n_a);
    for interval in 0..config.intervals_per_drop {
        // WLAN power at each UT from this interval's active devices.
        let mut w2u = keyed(seed, &[Stream::WlanToUt as u64, 1 + interval as u64]);
        let wlan_at_ut: Vec<f64> = state
            .ut_device_gain
            .iter()
            .map(|gains| {
                active
                    .iter()
                    .map(|&j| {
                        let fade = if config.wlan_ut_fast_fading {
                            w2u.sample::<f64, _>(Exp1)
                        } else {
                            1.0
                        };
                        state.devices[j].power_mw * gains[j] * fade
                    })
                    .sum()
            })
            .collect();

        let mut outcomes = Vec::with_capacity(state.n_sectors);
        let mut plans = Vec::with_capacity(state.n_sectors);
        for s in 0..state.n_sectors {
            let n_nulls = match config.n_n {
                NullPolicy::Adaptive => null_state[s].current_n_nulls,
                _ => config.initial_nulls(),
            };
            let nulls = null_basis_for(&state, s, n_a, n_nulls)?;
            let g = &state.wlan_channels[s];
            let mut measured = filtered_power_mw(&nulls, active.iter().map(|&j| (g.col(j), state.devices[j].power_mw)));
            if config.elbt_include_noise {
                measured += noise_bs * (n_a - n_nulls) as f64 / n_a as f64;
            }
            let outcome = ElbtOutcome::new(mw_to_dbm(measured), config.gamma_bs_dbm, n_nulls);
            outcomes.push(outcome);

            let elig = &state.eligibility[s];
            out.degraded_intervals += usize::from(elig.degraded);
            let total_mw = regulatory_power_mw(n_a, n_nulls, n_u)?;
            let p_stream = total_mw / n_u as f64;
            let ut0 = s * k_per;
            let site = state.sector_site[s];

            let mut redraw = 0;
            let plan = loop {
                let mut rng = keyed(
                    seed,
                    &[Stream::UtFading as u64, interval as u64, s as u64, redraw as u64],
                );
                let mut channels = Vec::with_capacity(k_per);
                for u in 0..k_per {
                    fill_channel(
                        state.ut_theta[s][ut0 + u],
                        &state.ut_loss[site][ut0 + u],
                        n_a,
                        config.bs_max_gain_dbi,
                        &mut rng,
                        &mut h_buf,
                    );
                    channels.push(h_buf.clone());
                }
                let estimate: Vec<f64> = (0..k_per)
                    .map(|u| {
                        let gain = if elig.uts.contains(&u) {
                            norm_sqr(&nulls.project_complement(&channels[u]))
                        } else {
                            0.0
                        };
                        let snr = p_stream * gain / (noise_ut + wlan_at_ut[ut0 + u]);
                        (1.0 + snr).log2().min(config.se_cap_bps_hz) * bw
                    })
                    .collect();
                let selected = pf_select(&elig.uts, &estimate, &pf[s], n_u);
                let refs: Vec<&[C64]> = selected.iter().map(|&u| &channels[u][..]).collect();
                match zf_precoder(&refs, &nulls, total_mw) {
                    Ok(precoder) => {
                        let served = selected.iter().map(|&u| ut0 + u).collect();
                        let channels = selected.iter().map(|&u| channels[u].clone()).collect();
                        break SectorPlan {
                            precoder,
                            served,
                            channels,
                            granted: outcome.granted,
                        };
                    }
                    Err(Error::RankDeficient { .. }) if redraw + 1 < MAX_REDRAWS => {
                        redraw += 1;
                        out.fading_redraws += 1;
                    }
                    Err(e) => return Err(e),
                }
            };
            plans.push(plan);
        }

        // WLAN side: every sector transmits.
        for (j, dev) in state.devices.iter().enumerate() {
            let mw = wlan_device_interference_mw(
                plans
                    .iter()
                    .zip(&state.wlan_channels)
                    .map(|(p, g)| (&p.precoder, g.col(j))),
            );
            if dev.masked {
                out.masked_intf_dbm.push(mw_to_dbm(mw));
            } else {
                out.wlan_intf_dbm.push(mw_to_dbm(mw));
            }
        }

        // Cellular side: only granted sectors transmit.
        for (s, plan) in plans.iter().enumerate() {
            let mut served_rate = vec![0.0; k_per];
            if !plan.granted {
                out.sector_rate_bps.push(0.0);
                update_pf(&mut pf[s], &served_rate);
                continue;
            }
            let mut sinrs = Vec::with_capacity(plan.served.len());
            for (k, (&ut, h)) in plan.served.iter().zip(&plan.channels).enumerate() {
                let inter: f64 = plans
                    .iter()
                    .enumerate()
                    .filter(|(b, p)| *b != s && p.granted)
                    .map(|(b, p)| p.precoder.total_power_mw * state.ut_gain[b][ut])
                    .sum();
                let t = ut_sinr(h, k, &plan.precoder, inter, wlan_at_ut[ut], noise_ut);
                let sinr = t.linear();
                served_rate[ut - s * k_per] = (1.0 + sinr).log2().min(config.se_cap_bps_hz) * bw;
                sinrs.push(sinr);
            }
            out.sector_rate_bps
                .push(sector_rate(sinrs, bw, config.se_cap_bps_hz));
            update_pf(&mut pf[s], &served_rate);
        }

        if let NullPolicy::Adaptive = config.n_n {
            for (st, o) in null_state.iter_mut().zip(&outcomes) {
                *st = adapt_nulls(*st, o);
            }
        }
        out.elbt.push(outcomes);
    }
    Ok(out)
}

/// Runs every drop in order and pools them.
pub fn run_campaign(config: &ScenarioConfig) -> Result<MetricsReport> {
    let drops = (0..config.drops as u64)
        .map(|d| run_drop(config, d))
        .collect::<Result<Vec<_>>>()?;
    MetricsReport::from_drops(&drops)
}

/// Parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Array size; the null policy is kept.
    NA,
    /// Fixed null count.
    NN,
    HotspotsPerSector,
}

impl FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "na" | "n_a" => Ok(Self::NA),
            "nn" | "n_n" => Ok(Self::NN),
            "hotspots" | "hotspots_per_sector" => Ok(Self::HotspotsPerSector),
            _ => Err(Error::UnknownAxis(String::from(s))),
        }
    }
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            Self::NA => "na",
            Self::NN => "nn",
            Self::HotspotsPerSector => "hotspots",
        }
    }

    /// `config` with the axis set to `value`.
    pub fn apply(self, config: &ScenarioConfig, value: f64) -> Result<ScenarioConfig> {
        let mut c = config.clone();
        let count = || {
            if value >= 0.0 && value.fract() == 0.0 {
                Ok(value as usize)
            } else {
                Err(Error::InvalidConfig(alloc::format!(
                    "{} needs a non-negative integer, got {value}",
                    self.name()
                )))
            }
        };
        match self {
            Self::NA => c.n_a = count()?,
            Self::NN => c.n_n = NullPolicy::Fixed(count()?),
            Self::HotspotsPerSector => c.hotspots_per_sector = value,
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub value: f64,
    pub config: ScenarioConfig,
    pub report: MetricsReport,
}

/// One campaign per value with a shared master seed, so points see the same
/// deployments wherever the axis does not change them.
pub fn sweep(config: &ScenarioConfig, axis: SweepAxis, values: &[f64]) -> Result<Vec<SweepPoint>> {
    sweep_with(config, axis, values, run_campaign)
}

/// [`sweep`] with a caller-supplied campaign runner.
pub fn sweep_with(
    config: &ScenarioConfig,
    axis: SweepAxis,
    values: &[f64],
    mut runner: impl FnMut(&ScenarioConfig) -> Result<MetricsReport>,
) -> Result<Vec<SweepPoint>> {
    if values.is_empty() {
        return Err(Error::EmptySweep);
    }
    values
        .iter()
        .map(|&v| {
            let c = axis.apply(config, v)?;
            let report = runner(&c)?;
            Ok(SweepPoint {
                value: v,
                config: c,
                report,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::SENTINEL_DBM;

    fn small() -> ScenarioConfig {
        ScenarioConfig {
            n_a: 16,
            n_u: 4,
            uts_per_sector: 8,
            intervals_per_drop: 3,
            drops: 2,
            ..Default::default()
        }
    }

    #[test]
    fn drop_is_reproducible() {
        let c = small();
        assert_eq!(run_drop(&c, 3).unwrap(), run_drop(&c, 3).unwrap());
        assert_ne!(run_drop(&c, 3).unwrap(), run_drop(&c, 4).unwrap());
    }

    #[test]
    fn empty_coexistence() {
        let c = ScenarioConfig {
            hotspots_per_sector: 0.0,
            ..small()
        };
        let d = run_drop(&c, 0).unwrap();
        assert_eq!(d.grant_rate(), 1.0);
        assert!(d.wlan_intf_dbm.is_empty());
        assert!(d.elbt.iter().flatten().all(|o| o.measured_dbm == SENTINEL_DBM));
        assert!(d.sector_rate_bps.iter().all(|&r| r > 0.0));
        let r = MetricsReport::from_drops(&[d]).unwrap();
        assert_eq!(r.wlan_intf_p50_dbm, SENTINEL_DBM);
        assert_eq!(r.elbt_grant_rate, 1.0);
    }

    #[test]
    fn one_drop_campaign_matches_the_drop() {
        let c = ScenarioConfig { drops: 1, ..small() };
        let d = run_drop(&c, 0).unwrap();
        assert_eq!(run_campaign(&c).unwrap(), MetricsReport::from_drops(&[d]).unwrap());
    }

    #[test]
    fn drop_order_does_not_matter() {
        let c = small();
        let a = run_drop(&c, 0).unwrap();
        let b = run_drop(&c, 1).unwrap();
        assert_eq!(
            MetricsReport::from_drops(&[a.clone(), b.clone()]).unwrap(),
            MetricsReport::from_drops(&[b, a]).unwrap()
        );
    }

    #[test]
    fn denied_sectors_have_zero_rate() {
        let c = ScenarioConfig {
            n_n: NullPolicy::Fixed(0),
            hotspots_per_sector: 4.0,
            ..small()
        };
        let d = run_drop(&c, 0).unwrap();
        for (i, row) in d.elbt.iter().enumerate() {
            for (s, o) in row.iter().enumerate() {
                let r = d.sector_rate_bps[i * row.len() + s];
                assert_eq!(o.granted, r > 0.0, "interval {i} sector {s}");
            }
        }
    }

    #[test]
    fn adaptive_trajectory_is_monotone() {
        let c = ScenarioConfig {
            n_n: NullPolicy::Adaptive,
            adapt_initial_nulls: 0,
            intervals_per_drop: 12,
            ..small()
        };
        let d = run_drop(&c, 0).unwrap();
        for s in 0..d.elbt[0].len() {
            let mut prev = 0;
            for row in &d.elbt {
                assert!(row[s].n_nulls_used >= prev);
                assert!(row[s].n_nulls_used <= c.max_nulls());
                prev = row[s].n_nulls_used;
            }
        }
    }

    #[test]
    fn axis_parsing_and_sweep_errors() {
        assert_eq!("na".parse::<SweepAxis>().unwrap(), SweepAxis::NA);
        assert_eq!("hotspots".parse::<SweepAxis>().unwrap(), SweepAxis::HotspotsPerSector);
        assert!(matches!("x".parse::<SweepAxis>(), Err(Error::UnknownAxis(_))));
        assert!(matches!(sweep(&small(), SweepAxis::NN, &[]), Err(Error::EmptySweep)));
        assert!(SweepAxis::NN.apply(&small(), 2.5).is_err());
        assert!(matches!(
            SweepAxis::NN.apply(&small(), 16.0),
            Err(Error::InsufficientDof { .. })
        ));
    }

    #[test]
    fn sweep_runs_one_campaign_per_value() {
        let c = ScenarioConfig { drops: 1, intervals_per_drop: 1, ..small() };
        let pts = sweep(&c, SweepAxis::NN, &[0.0, 4.0]).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].config.n_n, NullPolicy::Fixed(4));
    }
}
