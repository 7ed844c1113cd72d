//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mmimou_core::selftest::{self, Options};
use mmimou_core::{ScenarioConfig, SweepAxis};

use crate::campaign::{default_workers, run_campaign, run_sweep};
use crate::config_file;
use crate::error::SimError;
use crate::output::{write_outputs, RunManifest, SweepInfo};

#[derive(Debug, Parser)]
#[command(name = "mmimou", version, about = "Massive MIMO in unlicensed spectrum: Monte Carlo campaigns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scenario file (`key = value` lines).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "results")]
    pub out: PathBuf,
    /// Overrides `master_seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides `drops`.
    #[arg(long)]
    pub drops: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Extra `key=value` overrides, applied after the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one campaign.
    Run(Common),
    /// Run one campaign per value of a parameter.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// na, nn or hotspots.
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
    /// Run the built-in invariant suites.
    Selftest {
        /// Corrupt the null basis to check that failures are reported.
        #[arg(long, hide = true)]
        perturb_projector: bool,
    },
}

fn load(common: &Common) -> Result<ScenarioConfig, SimError> {
    let text = std::fs::read_to_string(&common.config)
        .map_err(|e| SimError::Config(format!("cannot read {}: {e}", common.config.display())))?;
    let mut c = config_file::parse(&text)?;
    config_file::apply_overrides(&mut c, &common.set)?;
    if let Some(s) = common.seed {
        c.master_seed = s;
    }
    if let Some(d) = common.drops {
        c.drops = d;
    }
    c.validate()?;
    Ok(c)
}

fn manifest(command: &str, c: &ScenarioConfig, workers: usize, started: Instant, sweep: Option<SweepInfo>) -> RunManifest {
    RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        config: config_file::to_text(c),
        config_hash: config_file::config_hash(c),
        master_seed: c.master_seed,
        workers,
        duration_s: started.elapsed().as_secs_f64(),
        sweep,
        outputs: Vec::new(),
    }
}

/// Parses `--values`; empty lists are rejected.
pub fn parse_values(text: &str) -> Result<Vec<f64>, SimError> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| SimError::Config(format!("--values: cannot parse {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(SimError::Config("--values is empty".to_string()));
    }
    Ok(values)
}

fn cmd_run(common: &Common, out: &mut dyn Write) -> Result<(), SimError> {
    let started = Instant::now();
    let c = load(common)?;
    let workers = common.workers.unwrap_or_else(default_workers);
    let report = run_campaign(&c, workers)?;
    let m = manifest("run", &c, workers, started, None);
    let m = write_outputs(&common.out, m, &[(c, report)])?;
    report_paths(out, &m);
    Ok(())
}

fn cmd_sweep(common: &Common, param: &str, values: &str, out: &mut dyn Write) -> Result<(), SimError> {
    let started = Instant::now();
    let axis: SweepAxis = param.parse()?;
    let values = parse_values(values)?;
    let c = load(common)?;
    let workers = common.workers.unwrap_or_else(default_workers);
    let points = run_sweep(&c, axis, &values, workers)?;
    let info = SweepInfo {
        param: axis.name().to_string(),
        values,
    };
    let m = manifest("sweep", &c, workers, started, Some(info));
    let pairs: Vec<_> = points.into_iter().map(|p| (p.config, p.report)).collect();
    let m = write_outputs(&common.out, m, &pairs)?;
    report_paths(out, &m);
    Ok(())
}

fn report_paths(out: &mut dyn Write, m: &RunManifest) {
    for p in &m.outputs {
        let _ = writeln!(out, "wrote {}", p.display());
    }
}

fn cmd_selftest(perturb_projector: bool, out: &mut dyn Write) -> Result<(), SimError> {
    let results = selftest::run_all(Options { perturb_projector });
    let mut failed = Vec::new();
    for r in &results {
        let _ = writeln!(out, "{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        if !r.passed {
            failed.push(r.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(SimError::Selftest(failed.join(", ")))
    }
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = match &cli.command {
        Command::Run(common) => cmd_run(common, out),
        Command::Sweep { common, param, values } => cmd_sweep(common, param, values, out),
        Command::Selftest { perturb_projector } => cmd_selftest(*perturb_projector, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
