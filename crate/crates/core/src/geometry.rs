//! Wrap-around hexagonal deployment.
//!
//! Sites sit on a hexagonal lattice with spacing equal to the inter-site
//! distance; the 19-site cluster (two rings around a centre site) tiles the
//! plane under six translations of length `isd·√19`, which gives the
//! wrap-around images. Each site carries three 120° sectors; a sector's
//! region is the rhombus formed by the site and the three hexagon vertices
//! it faces.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::config::{HotspotCountMode, ScenarioConfig};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(r: f64, deg: f64) -> Self {
        let a = deg.to_radians();
        Self::new(r * a.cos(), r * a.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Azimuth in degrees, counter-clockwise from east.
    pub fn azimuth_deg(self) -> f64 {
        self.y.atan2(self.x).to_degrees()
    }
}

impl core::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl core::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl core::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Boresight azimuths of the three sectors of every site.
pub const SECTOR_AZIMUTHS_DEG: [f64; 3] = [30.0, 150.0, 270.0];

pub const SITES: usize = 19;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sector {
    pub site: usize,
    pub azimuth_deg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub isd_m: f64,
    pub sites: Vec<Point>,
    pub sectors: Vec<Sector>,
    /// Identity plus the six cluster translations.
    pub wrap_shifts: [Point; 7],
}

impl Layout {
    pub fn site_of(&self, sector: usize) -> Point {
        self.sites[self.sectors[sector].site]
    }

    /// Displacement from `a` to the nearest wrap-around image of `b`.
    pub fn wrap_offset(&self, a: Point, b: Point) -> Point {
        let d = b - a;
        let mut best = d;
        let mut best_n = d.norm();
        for &s in &self.wrap_shifts[1..] {
            let c = d + s;
            let n = c.norm();
            if n < best_n {
                best = c;
                best_n = n;
            }
        }
        best
    }

    pub fn wrap_distance(&self, a: Point, b: Point) -> f64 {
        self.wrap_offset(a, b).norm()
    }

    /// Circumradius of a site's hexagonal cell.
    pub fn cell_radius(&self) -> f64 {
        self.isd_m / 3.0.sqrt()
    }

    /// Edge vectors `(e1, e2)` of a sector's rhombus, measured from its site.
    pub fn sector_edges(&self, sector: usize) -> (Point, Point) {
        let az = self.sectors[sector].azimuth_deg;
        let r = self.cell_radius();
        (Point::polar(r, az - 60.0), Point::polar(r, az + 60.0))
    }

    /// Centroid of a sector's rhombus.
    pub fn sector_centroid(&self, sector: usize) -> Point {
        let (e1, e2) = self.sector_edges(sector);
        self.site_of(sector) + (e1 + e2) * 0.5
    }

    /// Whether `p` (already unwrapped relative to the site) lies in the sector.
    pub fn sector_contains(&self, sector: usize, p: Point) -> bool {
        let (e1, e2) = self.sector_edges(sector);
        let d = p - self.site_of(sector);
        let det = e1.x * e2.y - e1.y * e2.x;
        let u = (d.x * e2.y - d.y * e2.x) / det;
        let v = (e1.x * d.y - e1.y * d.x) / det;
        let tol = 1e-9;
        (-tol..=1.0 + tol).contains(&u) && (-tol..=1.0 + tol).contains(&v)
    }

    pub fn sample_in_sector<R: Rng + ?Sized>(&self, sector: usize, rng: &mut R) -> Point {
        let (e1, e2) = self.sector_edges(sector);
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        self.site_of(sector) + e1 * u + e2 * v
    }
}

/// Builds the 19-site, 3-sector wrap-around layout.
pub fn build_layout(isd_m: f64) -> Result<Layout> {
    if !(isd_m > 0.0) {
        return Err(Error::InvalidConfig(alloc::format!(
            "isd_m must be positive, got {isd_m}"
        )));
    }
    let a1 = Point::new(isd_m, 0.0);
    let a2 = Point::polar(isd_m, 60.0);
    let mut sites = Vec::with_capacity(SITES);
    // Axial coordinates with hex distance ≤ 2, centre first, then by ring.
    for ring in 0..=2i32 {
        for q in -2..=2i32 {
            for r in -2..=2i32 {
                let dist = q.abs().max(r.abs()).max((q + r).abs());
                if dist == ring {
                    sites.push(a1 * q as f64 + a2 * r as f64);
                }
            }
        }
    }
    debug_assert_eq!(sites.len(), SITES);

    let sectors = (0..SITES)
        .flat_map(|site| {
            SECTOR_AZIMUTHS_DEG
                .iter()
                .map(move |&azimuth_deg| Sector { site, azimuth_deg })
        })
        .collect();

    // (3, 2) in lattice coordinates and its rotations by multiples of 60°.
    let base = a1 * 3.0 + a2 * 2.0;
    let mut wrap_shifts = [Point::default(); 7];
    for (k, s) in wrap_shifts.iter_mut().enumerate().skip(1) {
        let rot = (k as f64 - 1.0) * PI / 3.0;
        let (sn, cs) = rot.sin_cos();
        *s = Point::new(base.x * cs - base.y * sn, base.x * sn + base.y * cs);
    }
    Ok(Layout {
        isd_m,
        sites,
        sectors,
        wrap_shifts,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hotspot {
    pub sector: usize,
    pub center: Point,
    pub ap: Point,
    pub stas: Vec<Point>,
    /// One of the `num_channels` non-overlapping 20 MHz channels.
    pub channel: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub layout: Layout,
    pub bs_height_m: f64,
    pub device_height_m: f64,
    /// Per sector.
    pub ut_positions: Vec<Vec<Point>>,
    pub hotspots: Vec<Hotspot>,
}

impl Deployment {
    pub fn sector_count(&self) -> usize {
        self.layout.sectors.len()
    }
}

/// Drops `uts_per_sector` UTs uniformly over every sector.
pub fn drop_users<R: Rng + ?Sized>(
    layout: &Layout,
    config: &ScenarioConfig,
    rng: &mut R,
) -> Result<Vec<Vec<Point>>> {
    if config.uts_per_sector < config.n_u {
        return Err(Error::InvalidConfig(alloc::format!(
            "uts_per_sector = {} is smaller than n_u = {}",
            config.uts_per_sector,
            config.n_u
        )));
    }
    Ok((0..layout.sectors.len())
        .map(|s| {
            (0..config.uts_per_sector)
                .map(|_| layout.sample_in_sector(s, rng))
                .collect()
        })
        .collect())
}

fn hotspot_count<R: Rng + ?Sized>(density: f64, mode: HotspotCountMode, rng: &mut R) -> usize {
    match mode {
        HotspotCountMode::Fixed => {
            let base = density.floor();
            let extra = rng.random::<f64>() < density - base;
            base as usize + usize::from(extra)
        }
        HotspotCountMode::Poisson => {
            if density <= 0.0 {
                0
            } else {
                Poisson::new(density).map_or(0, |p| p.sample(rng) as usize)
            }
        }
    }
}

/// Point uniformly distributed in a disc.
pub fn sample_in_disc<R: Rng + ?Sized>(center: Point, radius: f64, rng: &mut R) -> Point {
    let r = radius * rng.random::<f64>().sqrt();
    let a = 2.0 * PI * rng.random::<f64>();
    center + Point::new(r * a.cos(), r * a.sin())
}

/// Drops WLAN hotspots: centre uniform in the sector, AP at the centre, STAs
/// uniform in the hotspot disc, channel uniform over the available channels.
pub fn drop_hotspots<R: Rng + ?Sized>(
    layout: &Layout,
    density_per_sector: f64,
    config: &ScenarioConfig,
    rng: &mut R,
) -> Vec<Hotspot> {
    let mut out = Vec::new();
    for s in 0..layout.sectors.len() {
        let count = hotspot_count(density_per_sector, config.hotspot_count_mode, rng);
        for _ in 0..count {
            let center = layout.sample_in_sector(s, rng);
            let stas = (0..config.stas_per_hotspot)
                .map(|_| sample_in_disc(center, config.hotspot_radius_m, rng))
                .collect();
            let channel = rng.random_range(0..config.num_channels.max(1)) as u8;
            out.push(Hotspot {
                sector: s,
                center,
                ap: center,
                stas,
                channel,
            });
        }
    }
    out
}

/// Complete deployment for one drop.
pub fn build_deployment<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> Result<Deployment> {
    let layout = build_layout(config.isd_m)?;
    let ut_positions = drop_users(&layout, config, rng)?;
    let hotspots = drop_hotspots(&layout, config.hotspots_per_sector, config, rng);
    Ok(Deployment {
        layout,
        bs_height_m: config.bs_height_m,
        device_height_m: config.device_height_m,
        ut_positions,
        hotspots,
    })
}
