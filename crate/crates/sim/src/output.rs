//! Results table, run manifest and text summary.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use mmimou_core::{MetricsReport, NullPolicy, ScenarioConfig};
use serde::{Deserialize, Serialize};

use crate::config_file;
use crate::error::SimError;

pub const RESULTS_FILE: &str = "results.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const SUMMARY_FILE: &str = "summary.txt";

/// One results row; field order is the column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub config_hash: String,
    pub n_a: usize,
    /// A count, or `adaptive`.
    pub n_n: String,
    pub n_u: usize,
    pub hotspots_per_sector: f64,
    pub elbt_grant_rate: f64,
    pub wlan_intf_p50_dbm: f64,
    pub wlan_intf_p95_dbm: f64,
    pub bs_intf_p50_dbm: f64,
    pub bs_intf_p95_dbm: f64,
    pub sector_rate_mean_bps: f64,
    pub sector_rate_p50_bps: f64,
}

impl ResultRow {
    pub fn new(config_hash: &str, config: &ScenarioConfig, r: &MetricsReport) -> Self {
        Self {
            config_hash: config_hash.to_string(),
            n_a: config.n_a,
            n_n: match config.n_n {
                NullPolicy::Adaptive => "adaptive".to_string(),
                _ => config.initial_nulls().to_string(),
            },
            n_u: config.n_u,
            hotspots_per_sector: config.hotspots_per_sector,
            elbt_grant_rate: r.elbt_grant_rate,
            wlan_intf_p50_dbm: r.wlan_intf_p50_dbm,
            wlan_intf_p95_dbm: r.wlan_intf_p95_dbm,
            bs_intf_p50_dbm: r.bs_intf_p50_dbm,
            bs_intf_p95_dbm: r.bs_intf_p95_dbm,
            sector_rate_mean_bps: r.sector_rate_mean_bps,
            sector_rate_p50_bps: r.sector_rate_p50_bps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepInfo {
    pub param: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Canonical config text; parses back to the same scenario.
    pub config: String,
    pub config_hash: String,
    pub master_seed: u64,
    pub workers: usize,
    pub duration_s: f64,
    pub sweep: Option<SweepInfo>,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn scenario(&self) -> Result<ScenarioConfig, SimError> {
        config_file::parse(&self.config)
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), SimError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| SimError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| SimError::io(path, e))?;
    tmp.persist(path).map_err(|e| SimError::io(path, e.error))?;
    Ok(())
}

pub fn results_csv(rows: &[ResultRow]) -> Result<Vec<u8>, SimError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| SimError::Output(format!("csv: {e}")))?;
    }
    w.into_inner().map_err(|e| SimError::Output(format!("csv: {e}")))
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>, SimError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| SimError::Output(format!("{}: {e}", path.display())))?;
    r.deserialize()
        .collect::<Result<_, _>>()
        .map_err(|e| SimError::Output(format!("{}: {e}", path.display())))
}

fn dbm(x: f64) -> String {
    if x <= mmimou_core::units::SENTINEL_DBM {
        "below floor".to_string()
    } else {
        format!("{x:.1} dBm")
    }
}

pub fn summary_text(manifest: &RunManifest, points: &[(ScenarioConfig, MetricsReport)]) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "{} {} ({})", manifest.tool, manifest.version, manifest.command);
    let _ = writeln!(s, "config hash  {}", manifest.config_hash);
    let _ = writeln!(s, "master seed  {}", manifest.master_seed);
    let _ = writeln!(s, "workers      {}", manifest.workers);
    let _ = writeln!(s, "wall clock   {:.1} s", manifest.duration_s);
    for (c, r) in points {
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "N_A = {}, N_N = {}, N_U = {}, {} hotspots/sector, {} drops x {} intervals",
            c.n_a,
            match c.n_n {
                NullPolicy::Adaptive => "adaptive".to_string(),
                _ => c.initial_nulls().to_string(),
            },
            c.n_u,
            c.hotspots_per_sector,
            r.drops,
            r.intervals_per_drop
        );
        let _ = writeln!(s, "  eLBT grant rate          {:.3}", r.elbt_grant_rate);
        let _ = writeln!(
            s,
            "  WLAN interference p50/p95  {} / {}",
            dbm(r.wlan_intf_p50_dbm),
            dbm(r.wlan_intf_p95_dbm)
        );
        let _ = writeln!(
            s,
            "  BS filtered power p50/p95  {} / {}",
            dbm(r.bs_intf_p50_dbm),
            dbm(r.bs_intf_p95_dbm)
        );
        let _ = writeln!(
            s,
            "  sector rate mean/p50       {:.1} / {:.1} Mbps",
            r.sector_rate_mean_bps / 1e6,
            r.sector_rate_p50_bps / 1e6
        );
        if r.degraded_intervals > 0 || r.fading_redraws > 0 {
            let _ = writeln!(
                s,
                "  degraded sector-intervals {}, fading redraws {}",
                r.degraded_intervals, r.fading_redraws
            );
        }
    }
    s
}

/// Writes the three output files; the manifest goes last so its presence
/// marks a complete run.
pub fn write_outputs(
    out_dir: &Path,
    mut manifest: RunManifest,
    points: &[(ScenarioConfig, MetricsReport)],
) -> Result<RunManifest, SimError> {
    std::fs::create_dir_all(out_dir).map_err(|e| SimError::io(out_dir, e))?;
    let rows: Vec<ResultRow> = points
        .iter()
        .map(|(c, r)| ResultRow::new(&manifest.config_hash, c, r))
        .collect();
    let results = out_dir.join(RESULTS_FILE);
    let summary = out_dir.join(SUMMARY_FILE);
    let manifest_path = out_dir.join(MANIFEST_FILE);
    manifest.outputs = vec![results.clone(), summary.clone(), manifest_path.clone()];
    write_atomic(&results, &results_csv(&rows)?)?;
    write_atomic(&summary, summary_text(&manifest, points).as_bytes())?;
    let json = serde_json::to_vec_pretty(&manifest).map_err(|e| SimError::Output(format!("manifest: {e}")))?;
    write_atomic(&manifest_path, &json)?;
    Ok(manifest)
}

pub fn read_manifest(path: &Path) -> Result<RunManifest, SimError> {
    let bytes = std::fs::read(path).map_err(|e| SimError::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| SimError::Output(format!("{}: {e}", path.display())))
}
