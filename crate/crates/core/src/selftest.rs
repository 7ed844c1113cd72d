//! Small-dimension invariant suites run by the `selftest` command.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::config::{NullPolicy, ScenarioConfig};
use crate::engine::run_drop;
use crate::linalg::{dotc, norm, CMat, HermitianEigen};
use crate::propagation::complex_gaussian;
use crate::rng::{keyed, SimRng};
use crate::spatial::{per_stream_power_dbm, regulatory_power_dbm, true_covariance, zf_precoder, NullBasis};
use crate::units::lin_to_db;
use crate::C64;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    /// Corrupts the null basis before the projector checks. Lets callers
    /// confirm a broken build is reported.
    pub perturb_projector: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn random_vec(n: usize, rng: &mut SimRng) -> Vec<C64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

fn nulls_for(n_a: usize, devices: &[Vec<C64>], options: Options) -> Result<NullBasis, String> {
    let r = true_covariance(n_a, devices.iter().map(|g| (&g[..], 1.0))).map_err(|e| format!("{e}"))?;
    let eig = HermitianEigen::new(&r.matrix).map_err(|e| format!("{e}"))?;
    let mut nb = NullBasis::from_eigen(&eig, devices.len()).map_err(|e| format!("{e}"))?;
    if options.perturb_projector {
        nb.basis[(0, 0)] += C64::new(1e-3, 0.0);
    }
    Ok(nb)
}

fn projector_algebra(options: Options) -> Result<String, String> {
    let mut rng = keyed(0x5E1F, &[1]);
    let mut worst: f64 = 0.0;
    for n_a in [4usize, 8, 16] {
        for _ in 0..20 {
            let devs: Vec<Vec<C64>> = (0..n_a / 4 + 1).map(|_| random_vec(n_a, &mut rng)).collect();
            let nb = nulls_for(n_a, &devs, options)?;
            let g = nb.basis.adjoint().mul(&nb.basis);
            worst = worst.max(g.sub(&CMat::identity(nb.n_nulls())).frobenius_norm());
            let v = random_vec(n_a, &mut rng);
            let p1 = nb.project_complement(&v);
            let p2 = nb.project_complement(&p1);
            let d: Vec<C64> = p1.iter().zip(&p2).map(|(a, b)| a - b).collect();
            worst = worst.max(norm(&d) / norm(&v));
            for u in nb.basis.columns() {
                worst = worst.max(dotc(u, &p1).norm() / norm(&v));
            }
        }
    }
    if worst < 1e-10 {
        Ok(format!("max defect {worst:.1e}"))
    } else {
        Err(format!("projector defect {worst:.1e}"))
    }
}

fn zf_nulls(options: Options) -> Result<String, String> {
    let mut rng = keyed(0x5E1F, &[2]);
    let mut worst_cross: f64 = 0.0;
    let mut worst_depth: f64 = f64::NEG_INFINITY;
    for n_a in [8usize, 16] {
        for _ in 0..20 {
            let k = n_a / 4;
            let n_u = n_a / 4;
            let devs: Vec<Vec<C64>> = (0..k).map(|_| random_vec(n_a, &mut rng)).collect();
            let nb = nulls_for(n_a, &devs, options)?;
            let uts: Vec<Vec<C64>> = (0..n_u).map(|_| random_vec(n_a, &mut rng)).collect();
            let refs: Vec<&[C64]> = uts.iter().map(|v| &v[..]).collect();
            let p = zf_precoder(&refs, &nb, 1.0).map_err(|e| format!("{e}"))?;
            for (j, h) in uts.iter().enumerate() {
                let ht = nb.project_complement(h);
                for (kk, w) in p.matrix.columns().enumerate() {
                    if j != kk {
                        worst_cross = worst_cross.max(dotc(&ht, w).norm() / (norm(&ht) * norm(w)));
                    }
                }
            }
            for g in &devs {
                let leak = p.total_received_power(g);
                let reference = p.total_power_mw * crate::linalg::norm_sqr(g);
                worst_depth = worst_depth.max(lin_to_db(leak / reference));
            }
        }
    }
    if worst_cross <= 1e-9 && worst_depth <= -140.0 {
        Ok(format!("cross {worst_cross:.1e}, null depth {worst_depth:.0} dB"))
    } else {
        Err(format!("cross {worst_cross:.1e}, null depth {worst_depth:.0} dB"))
    }
}

fn power_formula() -> Result<String, String> {
    let p = regulatory_power_dbm(64, 42, 8).map_err(|e| format!("{e}"))?;
    if (p - 25.61).abs() > 0.01 {
        return Err(format!("regulatory_power(64, 42, 8) = {p:.4}"));
    }
    for n_a in [8usize, 16, 64] {
        for n_u in [1usize, 2, 8] {
            for n_n in 0..=n_a.saturating_sub(n_u) {
                let ps = per_stream_power_dbm(n_a, n_n, n_u).map_err(|e| format!("{e}"))?;
                let eirp = ps + lin_to_db((n_a - n_n) as f64);
                if (eirp - 30.0).abs() > 1e-9 {
                    return Err(format!("EIRP {eirp} at ({n_a}, {n_n}, {n_u})"));
                }
            }
        }
    }
    Ok(format!("regulatory_power(64, 42, 8) = {p:.2} dBm"))
}

fn determinism() -> Result<String, String> {
    let c = ScenarioConfig {
        n_a: 8,
        n_u: 2,
        n_n: NullPolicy::Fixed(4),
        uts_per_sector: 4,
        hotspots_per_sector: 1.0,
        intervals_per_drop: 2,
        drops: 1,
        ..Default::default()
    };
    let a = run_drop(&c, 0).map_err(|e| format!("{e}"))?;
    let b = run_drop(&c, 0).map_err(|e| format!("{e}"))?;
    if a == b {
        Ok(String::from("repeated drop identical"))
    } else {
        Err(String::from("repeated drop differs"))
    }
}

/// Runs every suite; never panics.
pub fn run_all(options: Options) -> Vec<SuiteResult> {
    let suites: [(&'static str, Result<String, String>); 4] = [
        ("projector algebra", projector_algebra(options)),
        ("zero-forcing nulls", zf_nulls(options)),
        ("power formula", power_formula()),
        ("determinism", determinism()),
    ];
    suites
        .into_iter()
        .map(|(name, r)| {
            let passed = r.is_ok();
            SuiteResult {
                name,
                passed,
                detail: r.unwrap_or_else(|e| e),
            }
        })
        .collect()
}
