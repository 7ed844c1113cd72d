//! Parallel campaign execution.

use mmimou_core::engine::{sweep_with, SweepPoint};
use mmimou_core::{run_drop, DropResult, MetricsReport, ScenarioConfig, SweepAxis};
use rayon::prelude::*;

use crate::error::SimError;

fn pool(workers: usize) -> Result<rayon::ThreadPool, SimError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SimError::Output(format!("thread pool: {e}")))
}

fn drops_in(pool: &rayon::ThreadPool, config: &ScenarioConfig) -> mmimou_core::Result<Vec<DropResult>> {
    config.validate()?;
    // An indexed parallel collect keeps drop order.
    pool.install(|| {
        (0..config.drops as u64)
            .into_par_iter()
            .map(|d| run_drop(config, d))
            .collect()
    })
}

/// Runs every drop on `workers` threads. Drops come back in index order.
pub fn run_drops(config: &ScenarioConfig, workers: usize) -> Result<Vec<DropResult>, SimError> {
    Ok(drops_in(&pool(workers)?, config)?)
}

/// Same report as [`mmimou_core::run_campaign`] for any worker count.
pub fn run_campaign(config: &ScenarioConfig, workers: usize) -> Result<MetricsReport, SimError> {
    Ok(MetricsReport::from_drops(&run_drops(config, workers)?)?)
}

pub fn run_sweep(
    config: &ScenarioConfig,
    axis: SweepAxis,
    values: &[f64],
    workers: usize,
) -> Result<Vec<SweepPoint>, SimError> {
    let pool = pool(workers)?;
    Ok(sweep_with(config, axis, values, |c| {
        MetricsReport::from_drops(&drops_in(&pool, c)?)
    })?)
}

/// Worker count when none is given.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
