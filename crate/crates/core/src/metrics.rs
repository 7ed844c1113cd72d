//! Interference, SINR, rates and percentile summaries.

use alloc::vec::Vec;
#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;

use crate::engine::DropResult;
use crate::error::{Error, Result};
use crate::linalg::dotc;
use crate::spatial::Precoder;
use crate::units::{mw_to_dbm, SENTINEL_DBM};
use crate::C64;

/// `Σ_b Σ_k p_{b,k} |g_{b,d}ᴴ w_{b,k}|²` in mW for one device.
pub fn wlan_device_interference_mw<'a>(
    transmitting: impl IntoIterator<Item = (&'a Precoder, &'a [C64])>,
) -> f64 {
    transmitting
        .into_iter()
        .map(|(p, g)| p.total_received_power(g))
        .sum()
}

pub fn wlan_device_interference_dbm<'a>(
    transmitting: impl IntoIterator<Item = (&'a Precoder, &'a [C64])>,
) -> f64 {
    mw_to_dbm(wlan_device_interference_mw(transmitting))
}

/// Received power terms of one scheduled UT, all in mW.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SinrTerms {
    pub signal: f64,
    pub intra_sector: f64,
    pub inter_sector: f64,
    pub wlan: f64,
    pub noise: f64,
}

impl SinrTerms {
    pub fn linear(&self) -> f64 {
        self.signal / (self.intra_sector + self.inter_sector + self.wlan + self.noise)
    }

    pub fn db(&self) -> f64 {
        crate::units::lin_to_db(self.linear())
    }
}

/// Signal and intra-sector leakage of stream `k` at its UT; the caller adds
/// the inter-sector, WLAN and noise terms.
pub fn ut_sinr(
    h: &[C64],
    k: usize,
    precoder: &Precoder,
    inter_sector_mw: f64,
    wlan_mw: f64,
    noise_mw: f64,
) -> SinrTerms {
    let mut terms = SinrTerms {
        inter_sector: inter_sector_mw,
        wlan: wlan_mw,
        noise: noise_mw,
        ..Default::default()
    };
    for (j, (w, p)) in precoder
        .matrix
        .columns()
        .zip(&precoder.per_ut_power_mw)
        .enumerate()
    {
        let rx = p * dotc(h, w).norm_sqr();
        if j == k {
            terms.signal = rx;
        } else {
            terms.intra_sector += rx;
        }
    }
    terms
}

/// `Σ_k min(log2(1 + SINR_k), cap) · B`, with linear SINRs.
pub fn sector_rate(sinrs: impl IntoIterator<Item = f64>, bandwidth_hz: f64, se_cap_bps_hz: f64) -> f64 {
    sinrs
        .into_iter()
        .map(|s| (1.0 + s.max(0.0)).log2().min(se_cap_bps_hz))
        .sum::<f64>()
        * bandwidth_hz
}

/// Nearest-rank percentile of an ascending slice.
pub fn percentile_sorted(sorted: &[f64], p: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::EmptySamples);
    }
    let n = sorted.len();
    let rank = ((p.clamp(0.0, 100.0) / 100.0) * n as f64).ceil() as usize;
    Ok(sorted[rank.clamp(1, n) - 1])
}

/// Nearest-rank percentile: element `⌈p/100 · n⌉` (1-based) of the sorted
/// samples.
pub fn percentile(samples: &[f64], p: f64) -> Result<f64> {
    let mut v = samples.to_vec();
    v.sort_by(f64::total_cmp);
    percentile_sorted(&v, p)
}

fn summary(sorted: &[f64]) -> (f64, f64) {
    (
        percentile_sorted(sorted, 50.0).unwrap_or(SENTINEL_DBM),
        percentile_sorted(sorted, 95.0).unwrap_or(SENTINEL_DBM),
    )
}

/// Campaign summary pooled over drops, intervals, sectors and devices.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub drops: usize,
    pub intervals_per_drop: usize,
    pub elbt_grant_rate: f64,
    /// Aggregate interference at visible co-channel WLAN devices (dBm).
    pub wlan_intf_p50_dbm: f64,
    pub wlan_intf_p95_dbm: f64,
    /// Same for STAs hidden from the covariance; sentinel when there are none.
    pub masked_intf_p50_dbm: f64,
    pub masked_intf_p95_dbm: f64,
    /// Null-filtered power measured by the BSs (dBm).
    pub bs_intf_p50_dbm: f64,
    pub bs_intf_p95_dbm: f64,
    pub sector_rate_mean_bps: f64,
    pub sector_rate_p50_bps: f64,
    /// Grant rate and mean null count per interval index, over drops and
    /// sectors.
    pub grant_rate_by_interval: Vec<f64>,
    pub mean_nulls_by_interval: Vec<f64>,
    pub degraded_intervals: usize,
    pub fading_redraws: usize,
}

impl MetricsReport {
    /// Pools the drops. The result does not depend on their order.
    pub fn from_drops(drops: &[DropResult]) -> Result<Self> {
        if drops.is_empty() {
            return Err(Error::EmptySamples);
        }
        let intervals = drops.iter().map(|d| d.intervals).max().unwrap_or(0);
        let mut wlan = Vec::new();
        let mut masked = Vec::new();
        let mut bs = Vec::new();
        let mut rates = Vec::new();
        let mut grants = alloc::vec![0usize; intervals];
        let mut nulls = alloc::vec![0usize; intervals];
        let mut counts = alloc::vec![0usize; intervals];
        let mut degraded = 0;
        let mut redraws = 0;
        for d in drops {
            wlan.extend_from_slice(&d.wlan_intf_dbm);
            masked.extend_from_slice(&d.masked_intf_dbm);
            rates.extend_from_slice(&d.sector_rate_bps);
            for (i, row) in d.elbt.iter().enumerate() {
                for o in row {
                    bs.push(o.measured_dbm);
                    grants[i] += usize::from(o.granted);
                    nulls[i] += o.n_nulls_used;
                    counts[i] += 1;
                }
            }
            degraded += d.degraded_intervals;
            redraws += d.fading_redraws;
        }
        for v in [&mut wlan, &mut masked, &mut bs, &mut rates] {
            v.sort_by(f64::total_cmp);
        }
        let (wlan_p50, wlan_p95) = summary(&wlan);
        let (masked_p50, masked_p95) = summary(&masked);
        let (bs_p50, bs_p95) = summary(&bs);
        let total: usize = counts.iter().sum();
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        Ok(Self {
            drops: drops.len(),
            intervals_per_drop: intervals,
            elbt_grant_rate: ratio(grants.iter().sum(), total),
            wlan_intf_p50_dbm: wlan_p50,
            wlan_intf_p95_dbm: wlan_p95,
            masked_intf_p50_dbm: masked_p50,
            masked_intf_p95_dbm: masked_p95,
            bs_intf_p50_dbm: bs_p50,
            bs_intf_p95_dbm: bs_p95,
            // Sorted summation keeps the mean independent of drop order.
            sector_rate_mean_bps: rates.iter().sum::<f64>() / rates.len().max(1) as f64,
            sector_rate_p50_bps: percentile_sorted(&rates, 50.0).unwrap_or(0.0),
            grant_rate_by_interval: grants.iter().zip(&counts).map(|(&g, &c)| ratio(g, c)).collect(),
            mean_nulls_by_interval: nulls.iter().zip(&counts).map(|(&n, &c)| ratio(n, c)).collect(),
            degraded_intervals: degraded,
            fading_redraws: redraws,
        })
    }
}
