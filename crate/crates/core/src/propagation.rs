//! Large-scale losses and small-scale multi-antenna channels.
//!
//! Links with a base-station endpoint use the urban-micro model, links
//! between two WLAN/UT devices use the outdoor device-to-device model. Both
//! are reachable through [`pathloss_model`] by their config names `"umi"`
//! and `"d2d"`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::units::db_to_lin;
use crate::C64;

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Below this linear K-factor the LOS component is dropped entirely.
pub const RAYLEIGH_K_FLOOR: f64 = 1e-3;

/// A path loss law registered under a config-file name.
pub trait PathlossModel: Sync {
    fn name(&self) -> &'static str;
    /// Loss in dB at distance `d_m` (clamped to ≥ 1 m).
    fn loss_db(&self, d_m: f64, carrier_ghz: f64, los: bool) -> f64;
}

pub struct UrbanMicro;
pub struct DeviceToDevice;

impl PathlossModel for UrbanMicro {
    fn name(&self) -> &'static str {
        "umi"
    }
    fn loss_db(&self, d_m: f64, carrier_ghz: f64, los: bool) -> f64 {
        pathloss_umi(d_m, carrier_ghz, los)
    }
}

impl PathlossModel for DeviceToDevice {
    fn name(&self) -> &'static str {
        "d2d"
    }
    fn loss_db(&self, d_m: f64, carrier_ghz: f64, los: bool) -> f64 {
        pathloss_d2d(d_m, carrier_ghz, los)
    }
}

static REGISTRY: [&dyn PathlossModel; 2] = [&UrbanMicro, &DeviceToDevice];

pub fn pathloss_model(name: &str) -> Result<&'static dyn PathlossModel> {
    REGISTRY
        .iter()
        .copied()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::UnknownModel(name.into()))
}

/// Urban-micro line-of-sight probability.
pub fn los_probability(d_m: f64) -> f64 {
    if d_m <= 0.0 {
        return 1.0;
    }
    let e = (-d_m / 36.0).exp();
    ((18.0 / d_m).min(1.0) * (1.0 - e) + e).clamp(0.0, 1.0)
}

/// Urban-micro hexagonal path loss (dB), `fc` in GHz.
pub fn pathloss_umi(d_m: f64, fc_ghz: f64, los: bool) -> f64 {
    let d = d_m.max(1.0);
    if los {
        22.0 * d.log10() + 28.0 + 20.0 * fc_ghz.log10()
    } else {
        36.7 * d.log10() + 22.7 + 26.0 * fc_ghz.log10()
    }
}

/// Outdoor device-to-device path loss with both antennas at 1.5 m.
///
/// LOS is dual-slope with the breakpoint at `4 h' h' fc / c` (effective
/// heights h' = 0.5 m). NLOS never drops below the LOS value.
pub fn pathloss_d2d(d_m: f64, fc_ghz: f64, los: bool) -> f64 {
    const H: f64 = 1.5;
    let d = d_m.max(1.0);
    let h_eff = H - 1.0;
    let breakpoint = 4.0 * h_eff * h_eff * fc_ghz * 1e9 / SPEED_OF_LIGHT;
    let los_db = if d < breakpoint {
        22.7 * d.log10() + 27.0 + 20.0 * fc_ghz.log10()
    } else {
        40.0 * d.log10() + 7.56 - 2.0 * 17.3 * h_eff.log10() + 2.7 * fc_ghz.log10()
    };
    if los {
        return los_db;
    }
    let nlos_db = (44.9 - 6.55 * H.log10()) * d.log10()
        + 34.46
        + 5.83 * H.log10()
        + 23.0 * (fc_ghz / 5.0).log10();
    nlos_db.max(los_db)
}

/// Ricean K-factor (dB) of a line-of-sight link.
pub fn ricean_k_db(d_m: f64) -> f64 {
    13.0 - 0.03 * d_m.max(0.0)
}

/// Three-sector antenna element pattern (dBi).
pub fn sector_antenna_gain_db(theta_deg: f64, max_gain_dbi: f64) -> f64 {
    let t = theta_deg / 70.0;
    max_gain_dbi - (12.0 * t * t).min(25.0)
}

/// Wraps an angle to [−180, 180).
pub fn wrap_deg(a: f64) -> f64 {
    let x = a + 180.0;
    let r = x - 360.0 * (x / 360.0).floor() - 180.0;
    if r >= 180.0 {
        r - 360.0
    } else {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkLoss {
    pub pathloss_db: f64,
    pub shadowing_db: f64,
    pub los: bool,
    /// `−∞` for Rayleigh links.
    pub k_factor_db: f64,
}

impl LinkLoss {
    pub fn k_linear(&self) -> f64 {
        if self.k_factor_db == f64::INFINITY {
            return f64::INFINITY;
        }
        let k = db_to_lin(self.k_factor_db);
        if k < RAYLEIGH_K_FLOOR {
            0.0
        } else {
            k
        }
    }

    pub fn is_rayleigh(&self) -> bool {
        self.k_linear() == 0.0
    }

    /// Linear large-scale gain including an antenna gain in dB.
    pub fn gain(&self, antenna_gain_db: f64) -> f64 {
        db_to_lin(antenna_gain_db - self.pathloss_db - self.shadowing_db)
    }
}

/// Log-normal shadowing standard deviations (dB).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shadowing {
    pub los_db: f64,
    pub nlos_db: f64,
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Zero-mean, unit-variance circularly symmetric complex Gaussian.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    C64::new(gaussian(rng) * s, gaussian(rng) * s)
}

/// Draws LOS state, path loss and shadowing for a link.
///
/// `d_los_m` feeds the LOS probability (horizontal distance) and `d_pl_m` the
/// path loss and K-factor (3D distance).
pub fn draw_link_loss<R: Rng + ?Sized>(
    model: &dyn PathlossModel,
    d_los_m: f64,
    d_pl_m: f64,
    carrier_ghz: f64,
    shadowing: Shadowing,
    rng: &mut R,
) -> LinkLoss {
    let los = rng.random::<f64>() < los_probability(d_los_m);
    let sigma = if los { shadowing.los_db } else { shadowing.nlos_db };
    LinkLoss {
        pathloss_db: model.loss_db(d_pl_m, carrier_ghz, los),
        shadowing_db: sigma * gaussian(rng),
        los,
        k_factor_db: if los {
            ricean_k_db(d_pl_m)
        } else {
            f64::NEG_INFINITY
        },
    }
}

/// Half-wavelength ULA response toward `theta_deg` off broadside.
pub fn steering_vector(n_a: usize, theta_deg: f64) -> Vec<C64> {
    let phase = PI * theta_deg.to_radians().sin();
    (0..n_a).map(|n| C64::from_polar(1.0, phase * n as f64)).collect()
}

/// A BS-to-device channel realization; received downlink signal is `hᴴ w`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector {
    pub coefficients: Vec<C64>,
    pub carrier_ghz: f64,
}

impl core::ops::Deref for ChannelVector {
    type Target = [C64];
    fn deref(&self) -> &[C64] {
        &self.coefficients
    }
}

/// `h = √(G·10^{−(PL+SF)/10}) · (√(K/(K+1)) a(θ) + √(1/(K+1)) w)`.
///
/// `theta_deg` is the departure angle off the sector boresight; it sets both
/// the element gain and the steering vector.
pub fn draw_channel<R: Rng + ?Sized>(
    theta_deg: f64,
    loss: &LinkLoss,
    n_a: usize,
    max_gain_dbi: f64,
    carrier_ghz: f64,
    rng: &mut R,
) -> ChannelVector {
    let mut coefficients = Vec::with_capacity(n_a);
    fill_channel(theta_deg, loss, n_a, max_gain_dbi, rng, &mut coefficients);
    ChannelVector {
        coefficients,
        carrier_ghz,
    }
}

/// Same as [`draw_channel`], writing into a reusable buffer.
pub fn fill_channel<R: Rng + ?Sized>(
    theta_deg: f64,
    loss: &LinkLoss,
    n_a: usize,
    max_gain_dbi: f64,
    rng: &mut R,
    out: &mut Vec<C64>,
) {
    out.clear();
    let amp = loss
        .gain(sector_antenna_gain_db(theta_deg, max_gain_dbi))
        .sqrt();
    let k = loss.k_linear();
    let (los_amp, nlos_amp) = if k == f64::INFINITY {
        (amp, 0.0)
    } else {
        (amp * (k / (k + 1.0)).sqrt(), amp * (1.0 / (k + 1.0)).sqrt())
    };
    let phase = PI * theta_deg.to_radians().sin();
    for n in 0..n_a {
        let mut z = C64::new(0.0, 0.0);
        if los_amp > 0.0 {
            z += C64::from_polar(los_amp, phase * n as f64);
        }
        if nlos_amp > 0.0 {
            z += complex_gaussian(rng) * nlos_amp;
        }
        out.push(z);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dotc, norm_sqr};
    use crate::rng::keyed;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn los_probability_values() {
        assert_eq!(los_probability(0.0), 1.0);
        assert!(close(los_probability(10.0), 1.0, 1e-12));
        assert!(close(los_probability(36.0), 0.684, 5e-4));
        assert!(los_probability(1e6) < 1e-4);
    }

    #[test]
    fn umi_values() {
        assert!(close(pathloss_umi(100.0, 5.2, true), 86.32, 0.005));
        assert!(close(pathloss_umi(100.0, 5.2, false), 114.72, 0.005));
        assert!(close(pathloss_umi(1.0, 5.2, true), 42.32, 0.005));
        assert_eq!(pathloss_umi(0.2, 5.2, true), pathloss_umi(1.0, 5.2, true));
    }

    #[test]
    fn d2d_values_and_monotonicity() {
        assert!(close(pathloss_d2d(10.0, 5.2, true), 64.02, 0.005));
        assert!(close(pathloss_d2d(100.0, 5.2, true), 99.91, 0.005));
        assert!(close(pathloss_d2d(100.0, 5.2, false), 123.37, 0.005));
        for los in [true, false] {
            let mut d = 1.0;
            while d <= 500.0 {
                assert!(pathloss_d2d(2.0 * d, 5.2, los) > pathloss_d2d(d, 5.2, los), "d={d}");
                d += 0.5;
            }
            assert!(pathloss_d2d(100.0, 5.2, los) - pathloss_d2d(10.0, 5.2, los) >= 20.0);
            assert!(pathloss_d2d(30.0, 5.2, false) >= pathloss_d2d(30.0, 5.2, true));
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(pathloss_model("umi").unwrap().name(), "umi");
        assert_eq!(pathloss_model("d2d").unwrap().name(), "d2d");
        assert!(matches!(pathloss_model("itu"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn k_factor_values() {
        assert!(close(ricean_k_db(0.0), 13.0, 1e-12));
        assert!(close(ricean_k_db(100.0), 10.0, 1e-12));
        let far = LinkLoss {
            pathloss_db: 100.0,
            shadowing_db: 0.0,
            los: true,
            k_factor_db: ricean_k_db(1e4),
        };
        assert!(far.is_rayleigh());
    }

    #[test]
    fn sector_pattern() {
        assert!(close(sector_antenna_gain_db(0.0, 14.0), 14.0, 1e-12));
        assert!(close(sector_antenna_gain_db(70.0, 14.0), 2.0, 1e-12));
        assert!(close(sector_antenna_gain_db(180.0, 14.0), -11.0, 1e-12));
        assert!(close(sector_antenna_gain_db(-180.0, 14.0), -11.0, 1e-12));
    }

    #[test]
    fn wrap_angles() {
        assert!(close(wrap_deg(190.0), -170.0, 1e-12));
        assert!(close(wrap_deg(-190.0), 170.0, 1e-12));
        assert!(close(wrap_deg(30.0), 30.0, 1e-12));
    }

    #[test]
    fn steering_is_unit_modulus() {
        for z in steering_vector(32, 37.0) {
            assert!(close(z.norm(), 1.0, 1e-14));
        }
    }

    #[test]
    fn pure_los_channel_energy_is_deterministic() {
        let loss = LinkLoss {
            pathloss_db: 80.0,
            shadowing_db: 0.0,
            los: true,
            k_factor_db: f64::INFINITY,
        };
        let mut rng = keyed(1, &[]);
        let h = draw_channel(20.0, &loss, 16, 14.0, 5.2, &mut rng);
        let expected = 16.0 * loss.gain(sector_antenna_gain_db(20.0, 14.0));
        assert!(close(norm_sqr(&h) / expected, 1.0, 1e-12));
    }

    #[test]
    fn rayleigh_channel_energy_matches_gain() {
        let loss = LinkLoss {
            pathloss_db: 90.0,
            shadowing_db: 0.0,
            los: false,
            k_factor_db: f64::NEG_INFINITY,
        };
        let mut rng = keyed(2, &[]);
        let n = 10_000;
        let expected = 8.0 * loss.gain(sector_antenna_gain_db(-45.0, 14.0));
        let mean: f64 = (0..n)
            .map(|_| norm_sqr(&draw_channel(-45.0, &loss, 8, 14.0, 5.2, &mut rng)))
            .sum::<f64>()
            / n as f64;
        assert!(close(mean / expected, 1.0, 0.05), "{}", mean / expected);
    }

    #[test]
    fn ricean_channel_energy_matches_gain() {
        let model = pathloss_model("umi").unwrap();
        let mut rng = keyed(3, &[]);
        let loss = LinkLoss {
            shadowing_db: 0.0,
            ..draw_link_loss(model, 5.0, 50.0, 5.2, Shadowing { los_db: 3.0, nlos_db: 4.0 }, &mut rng)
        };
        assert!(loss.los);
        let expected = 16.0 * loss.gain(sector_antenna_gain_db(10.0, 14.0));
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|_| norm_sqr(&draw_channel(10.0, &loss, 16, 14.0, 5.2, &mut rng)))
            .sum::<f64>()
            / n as f64;
        assert!(close(mean / expected, 1.0, 0.05));
    }

    #[test]
    fn shadowing_statistics() {
        let model = pathloss_model("umi").unwrap();
        let mut rng = keyed(4, &[]);
        let sh = Shadowing { los_db: 3.0, nlos_db: 3.0 };
        let n = 100_000;
        let samples: Vec<f64> = (0..n)
            .map(|_| draw_link_loss(model, 60.0, 60.0, 5.2, sh, &mut rng).shadowing_db)
            .collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() < 0.1, "{mean}");
        assert!(close(var.sqrt() / 3.0, 1.0, 0.05), "{}", var.sqrt());
    }

    #[test]
    fn los_frequency_matches_probability() {
        let model = pathloss_model("umi").unwrap();
        let mut rng = keyed(5, &[]);
        let sh = Shadowing { los_db: 3.0, nlos_db: 4.0 };
        for d in [20.0, 50.0, 120.0] {
            let n = 10_000;
            let hits = (0..n)
                .filter(|_| draw_link_loss(model, d, d, 5.2, sh, &mut rng).los)
                .count();
            let f = hits as f64 / n as f64;
            assert!(close(f, los_probability(d), 0.02), "d={d}: {f}");
        }
    }

    #[test]
    fn independent_streams_are_uncorrelated() {
        let loss = LinkLoss {
            pathloss_db: 0.0,
            shadowing_db: 0.0,
            los: false,
            k_factor_db: f64::NEG_INFINITY,
        };
        let n = 4000;
        let mut acc = C64::new(0.0, 0.0);
        let (mut ea, mut eb) = (0.0, 0.0);
        for i in 0..n {
            let a = draw_channel(0.0, &loss, 4, 0.0, 5.2, &mut keyed(11, &[i]));
            let b = draw_channel(0.0, &loss, 4, 0.0, 5.2, &mut keyed(12, &[i]));
            acc += dotc(&a, &b);
            ea += norm_sqr(&a);
            eb += norm_sqr(&b);
        }
        let corr = acc.norm() / (ea * eb).sqrt();
        assert!(corr < 0.05, "{corr}");
    }
}
