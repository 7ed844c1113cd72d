use mmimou_core::{NullPolicy, ScenarioConfig, SweepAxis};
use mmimou_sim::campaign::{run_campaign, run_drops, run_sweep};

fn small() -> ScenarioConfig {
    ScenarioConfig {
        n_a: 16,
        n_u: 4,
        drops: 5,
        intervals_per_drop: 2,
        master_seed: 99,
        ..Default::default()
    }
}

#[test]
fn worker_count_does_not_change_the_report() {
    let c = small();
    let sequential = mmimou_core::run_campaign(&c).unwrap();
    for workers in [1, 4, 8] {
        assert_eq!(run_campaign(&c, workers).unwrap(), sequential, "workers = {workers}");
    }
}

#[test]
fn drops_come_back_in_index_order() {
    let drops = run_drops(&small(), 4).unwrap();
    let idx: Vec<u64> = drops.iter().map(|d| d.drop_index).collect();
    assert_eq!(idx, [0, 1, 2, 3, 4]);
}

#[test]
fn adaptive_campaign_is_parallel_safe() {
    let c = ScenarioConfig {
        n_n: NullPolicy::Adaptive,
        adapt_initial_nulls: 2,
        intervals_per_drop: 4,
        ..small()
    };
    assert_eq!(run_campaign(&c, 1).unwrap(), run_campaign(&c, 8).unwrap());
}

#[test]
fn sweep_matches_individual_campaigns() {
    let c = small();
    let points = run_sweep(&c, SweepAxis::NN, &[0.0, 6.0], 3).unwrap();
    for p in &points {
        assert_eq!(p.report, run_campaign(&p.config, 1).unwrap());
    }
}

#[test]
fn seed_changes_the_outcome() {
    let a = run_campaign(&small(), 2).unwrap();
    let b = run_campaign(&ScenarioConfig { master_seed: 100, ..small() }, 2).unwrap();
    assert_ne!(a, b);
}
