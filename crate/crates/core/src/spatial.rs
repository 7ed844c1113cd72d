//! Spatial processing: WLAN covariance, radiation-null basis, complement
//! projection, projected zero-forcing and the EIRP-limited power budget.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{axpy, norm, norm_sqr, thin_qr, upper_triangular_inverse, CMat, HermitianEigen};
use crate::propagation::complex_gaussian;
use crate::units::{db_to_lin, lin_to_db};
use crate::C64;

/// Spatial covariance of the WLAN signals seen by one array.
#[derive(Debug, Clone, PartialEq)]
pub struct Covariance {
    pub matrix: CMat,
    /// 0 for the exact (perfect-knowledge) covariance.
    pub sample_count: usize,
}

impl Covariance {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

fn check_len(n_a: usize, g: &[C64]) -> Result<()> {
    if g.len() != n_a {
        return Err(Error::Dimension {
            expected: n_a,
            got: g.len(),
        });
    }
    Ok(())
}

/// `R = Σ_w P_w g_w g_wᴴ`; an empty device list gives the zero matrix.
pub fn true_covariance<'a>(
    n_a: usize,
    devices: impl IntoIterator<Item = (&'a [C64], f64)>,
) -> Result<Covariance> {
    let mut scaled: Vec<Vec<C64>> = Vec::new();
    for (g, p) in devices {
        check_len(n_a, g)?;
        let s = p.max(0.0).sqrt();
        scaled.push(g.iter().map(|z| z * s).collect());
    }
    let a = CMat::from_columns(n_a, &scaled);
    Ok(Covariance {
        matrix: CMat::gram_outer(&a),
        sample_count: 0,
    })
}

/// `R̂ = (1/S) Σ_s y_s y_sᴴ` with `y_s = Σ_w √P_w g_w x_{w,s} + n_s`.
///
/// Symbols `x` are unit-modulus with uniform random phase, like the BPSK
/// training fields of a WLAN preamble; `n_s` is complex Gaussian with
/// `noise_mw` per antenna.
pub fn sample_covariance<'a, R: Rng + ?Sized>(
    n_a: usize,
    devices: impl IntoIterator<Item = (&'a [C64], f64)>,
    symbols: usize,
    noise_mw: f64,
    rng: &mut R,
) -> Result<Covariance> {
    if symbols == 0 {
        return Err(Error::InvalidConfig("sample covariance needs S ≥ 1".into()));
    }
    let devs: Vec<(&[C64], f64)> = devices.into_iter().collect();
    for (g, _) in &devs {
        check_len(n_a, g)?;
    }
    let noise_amp = noise_mw.max(0.0).sqrt();
    let mut snapshots = CMat::zeros(n_a, symbols);
    for s in 0..symbols {
        let y = snapshots.col_mut(s);
        for (g, p) in &devs {
            let phase = rng.random::<f64>() * core::f64::consts::TAU;
            let x = C64::from_polar(p.max(0.0).sqrt(), phase);
            axpy(x, g, y);
        }
        if noise_amp > 0.0 {
            for yi in y.iter_mut() {
                *yi += complex_gaussian(rng) * noise_amp;
            }
        }
    }
    let mut matrix = CMat::gram_outer(&snapshots);
    matrix.scale(1.0 / symbols as f64);
    Ok(Covariance {
        matrix,
        sample_count: symbols,
    })
}

/// Orthonormal basis of the nulled subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct NullBasis {
    /// N_A × N_N, orthonormal columns.
    pub basis: CMat,
    /// Retained eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
}

impl NullBasis {
    pub fn empty(n_a: usize) -> Self {
        Self {
            basis: CMat::zeros(n_a, 0),
            eigenvalues: Vec::new(),
        }
    }

    /// First `n_nulls` eigenvectors of an already factorized covariance.
    pub fn from_eigen(eig: &HermitianEigen, n_nulls: usize) -> Result<Self> {
        let n_a = eig.vectors.rows();
        if n_nulls > n_a {
            return Err(Error::InsufficientDof {
                available: n_a,
                streams: n_nulls,
            });
        }
        Ok(Self {
            basis: eig.vectors.clone().truncate_cols(n_nulls),
            eigenvalues: eig.values[..n_nulls].to_vec(),
        })
    }

    pub fn n_antennas(&self) -> usize {
        self.basis.rows()
    }

    pub fn n_nulls(&self) -> usize {
        self.basis.cols()
    }

    /// `(I − U Uᴴ) v`
    pub fn project_complement(&self, v: &[C64]) -> Vec<C64> {
        let mut out = v.to_vec();
        for u in self.basis.columns() {
            let c = crate::linalg::dotc(u, v);
            axpy(-c, u, &mut out);
        }
        // Second pass keeps the result orthogonal to U to working precision
        // even when v is dominated by its in-span part.
        for u in self.basis.columns() {
            let c = crate::linalg::dotc(u, &out);
            axpy(-c, u, &mut out);
        }
        out
    }

    /// `‖(I − U Uᴴ) v‖²`
    pub fn residual_power(&self, v: &[C64]) -> f64 {
        norm_sqr(&self.project_complement(v))
    }
}

/// Eigenvectors of the `n_nulls` largest eigenvalues of `R`.
pub fn null_basis(r: &Covariance, n_nulls: usize) -> Result<NullBasis> {
    let n_a = r.dim();
    if n_nulls > n_a {
        return Err(Error::InsufficientDof {
            available: n_a,
            streams: n_nulls,
        });
    }
    if n_nulls == 0 {
        // Still reject malformed input.
        let defect = r.matrix.hermitian_defect();
        if defect > 1e-12 {
            return Err(Error::NotHermitian(defect));
        }
        return Ok(NullBasis::empty(n_a));
    }
    let eig = HermitianEigen::new(&r.matrix)?;
    NullBasis::from_eigen(&eig, n_nulls)
}

pub fn project_complement(nulls: &NullBasis, v: &[C64]) -> Vec<C64> {
    nulls.project_complement(v)
}

/// Downlink precoder; stream `k` is column `k` of `matrix`.
#[derive(Debug, Clone, PartialEq)]
pub struct Precoder {
    /// N_A × N_U, unit-norm columns.
    pub matrix: CMat,
    pub per_ut_power_mw: Vec<f64>,
    pub total_power_mw: f64,
}

impl Precoder {
    pub fn streams(&self) -> usize {
        self.matrix.cols()
    }

    /// `p_k |hᴴ w_k|²` for every stream.
    pub fn received_powers(&self, h: &[C64]) -> Vec<f64> {
        self.matrix
            .columns()
            .zip(&self.per_ut_power_mw)
            .map(|(w, p)| p * crate::linalg::dotc(h, w).norm_sqr())
            .collect()
    }

    /// `Σ_k p_k |hᴴ w_k|²`
    pub fn total_received_power(&self, h: &[C64]) -> f64 {
        self.matrix
            .columns()
            .zip(&self.per_ut_power_mw)
            .map(|(w, p)| p * crate::linalg::dotc(h, w).norm_sqr())
            .sum()
    }
}

/// Below this relative pivot the projected channel matrix counts as singular.
pub const RANK_TOLERANCE: f64 = 1e-8;

/// Zero-forcing on the nulled complement.
///
/// Channels are projected with `I − U Uᴴ`, `W = H̃ (H̃ᴴ H̃)⁻¹` is computed
/// through a thin QR (`W = Q R⁻ᴴ`), columns are normalized to unit norm and
/// `total_power_mw` is split evenly across streams.
pub fn zf_precoder(ut_channels: &[&[C64]], nulls: &NullBasis, total_power_mw: f64) -> Result<Precoder> {
    let n_a = nulls.n_antennas();
    let n_u = ut_channels.len();
    if n_u == 0 {
        return Ok(Precoder {
            matrix: CMat::zeros(n_a, 0),
            per_ut_power_mw: Vec::new(),
            total_power_mw: 0.0,
        });
    }
    if n_u > n_a - nulls.n_nulls() {
        return Err(Error::InsufficientDof {
            available: n_a - nulls.n_nulls(),
            streams: n_u,
        });
    }
    let mut projected = Vec::with_capacity(n_u);
    for h in ut_channels {
        check_len(n_a, h)?;
        projected.push(nulls.project_complement(h));
    }
    let h_tilde = CMat::from_columns(n_a, &projected);
    let (q, r) = thin_qr(&h_tilde, RANK_TOLERANCE)?;
    let r_inv_h = upper_triangular_inverse(&r).adjoint();
    let mut w = q.mul(&r_inv_h);
    for k in 0..n_u {
        let col = w.col_mut(k);
        let n = norm(col);
        for z in col.iter_mut() {
            *z /= n;
        }
    }
    let p = total_power_mw / n_u as f64;
    Ok(Precoder {
        matrix: w,
        per_ut_power_mw: vec![p; n_u],
        total_power_mw,
    })
}

/// Matched-filter beam `h/‖h‖`; the un-nulled reference in null-depth checks.
pub fn matched_filter(h: &[C64]) -> Vec<C64> {
    let n = norm(h);
    h.iter().map(|z| z / n).collect()
}

/// Total radiated power under the EIRP limit:
/// `30 − 10 log10((N_A − N_N)/N_U)` dBm for a 20 MHz channel.
pub fn regulatory_power_dbm(n_a: usize, n_n: usize, n_u: usize) -> Result<f64> {
    let dof = n_a.saturating_sub(n_n);
    if n_u == 0 || n_n > n_a || dof < n_u {
        return Err(Error::InsufficientDof {
            available: dof,
            streams: n_u,
        });
    }
    Ok(30.0 - lin_to_db(dof as f64 / n_u as f64))
}

/// Per-stream power with an even split: `total − 10 log10(N_U)`.
pub fn per_stream_power_dbm(n_a: usize, n_n: usize, n_u: usize) -> Result<f64> {
    Ok(regulatory_power_dbm(n_a, n_n, n_u)? - lin_to_db(n_u as f64))
}

pub fn regulatory_power_mw(n_a: usize, n_n: usize, n_u: usize) -> Result<f64> {
    regulatory_power_dbm(n_a, n_n, n_u).map(db_to_lin)
}
