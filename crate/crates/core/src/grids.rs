//! Generators for the two-dimensional sampling geometries: spiral, polar,
//! modified polar, logarithmic modified polar, plus equispaced and jittered
//! grids for testing.
//!
//! All generators are deterministic given their spec (including the RNG seed
//! for jittered grids). Exact coordinate duplicates (the polar kinds generate
//! the origin once per angle) are removed, keeping the first occurrence.

use crate::error::{Error, Result};
use crate::fourier::{wrap_coordinate, SamplingSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Spiral,
    Polar,
    ModifiedPolar,
    LogModifiedPolar,
    Equispaced,
    Jittered,
}

impl GridKind {
    pub fn label(&self) -> &'static str {
        match self {
            GridKind::Spiral => "spiral",
            GridKind::Polar => "polar",
            GridKind::ModifiedPolar => "modified_polar",
            GridKind::LogModifiedPolar => "log_modified_polar",
            GridKind::Equispaced => "equispaced",
            GridKind::Jittered => "jittered",
        }
    }

    pub fn parse(label: &str) -> Option<GridKind> {
        match label {
            "spiral" => Some(GridKind::Spiral),
            "polar" => Some(GridKind::Polar),
            "modified_polar" => Some(GridKind::ModifiedPolar),
            "log_modified_polar" => Some(GridKind::LogModifiedPolar),
            "equispaced" => Some(GridKind::Equispaced),
            "jittered" => Some(GridKind::Jittered),
            _ => None,
        }
    }
}

/// Ratio between the smallest positive radius and the largest one in the
/// logarithmic radial progression.
pub const DEFAULT_LOG_RATIO: f64 = 0.02;

#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub kind: GridKind,
    /// Radial count.
    pub r: usize,
    /// Angular count (ignored by equispaced/jittered).
    pub t: usize,
    /// Jitter amplitude in cell units for the jittered kind.
    pub jitter: f64,
    /// RNG seed for the jittered kind.
    pub seed: u64,
    /// Smallest-to-largest radius ratio for the logarithmic kind.
    pub log_ratio: f64,
}

impl GridSpec {
    /// A spec with the conventional angular count `T = 2R`.
    pub fn new(kind: GridKind, r: usize) -> Self {
        GridSpec {
            kind,
            r,
            t: 2 * r,
            jitter: 0.3,
            seed: 0,
            log_ratio: DEFAULT_LOG_RATIO,
        }
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = t;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Signed radii for the plain polar kinds: `j/(2R)` for `j = −R..R−1`,
/// covering the disk of radius 1/2.
fn polar_radii(r: usize) -> Vec<f64> {
    let r_i = r as i64;
    (-r_i..r_i).map(|j| j as f64 / (2 * r) as f64).collect()
}

/// Signed radii for the logarithmic kind: densest near the origin, zero
/// included, largest magnitude 1/2. Positive magnitudes follow a geometric
/// progression from `ratio/2` to `1/2`.
fn log_radii(r: usize, ratio: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * r);
    let rf = r as f64;
    let magnitude = |i: usize| -> f64 {
        if i == 0 {
            return 0.0;
        }
        // i = 1..R maps to exponents (R−i)/(R−1) = 1..0
        let exponent = if r == 1 {
            0.0
        } else {
            (rf - i as f64) / (rf - 1.0)
        };
        0.5 * ratio.powf(exponent)
    };
    for j in -(r as i64)..r as i64 {
        let mag = magnitude(j.unsigned_abs() as usize);
        out.push(if j < 0 { -mag } else { mag });
    }
    out
}

/// Half-circle angles `πt/T` for `t = −T/2..T/2−1` (signed radii supply the
/// other half).
fn polar_angles(t: usize) -> Vec<f64> {
    let half = (t / 2) as i64;
    let extra = (t % 2) as i64;
    (-half..half + extra)
        .map(|ti| PI * ti as f64 / t as f64)
        .collect()
}

fn in_square(x: f64, y: f64) -> bool {
    (-0.5..0.5).contains(&x) && (-0.5..0.5).contains(&y)
}

/// Generates the sampling set for a grid spec. Point order is the generation
/// order documented per kind (radial index outer, angular inner for the polar
/// kinds; row-major for the cartesian kinds; arc-length order for the spiral).
pub fn generate(spec: &GridSpec) -> Result<SamplingSet> {
    if spec.r < 2 {
        return Err(Error::InvalidParameter(format!(
            "radial count R must be at least 2, got {}",
            spec.r
        )));
    }
    if spec.t < 1 {
        return Err(Error::InvalidParameter(
            "angular count T must be at least 1".into(),
        ));
    }
    if !(spec.jitter.is_finite() && spec.jitter >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "jitter amplitude must be finite and nonnegative, got {}",
            spec.jitter
        )));
    }
    if !(spec.log_ratio > 0.0 && spec.log_ratio <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "log radius ratio must lie in (0, 1], got {}",
            spec.log_ratio
        )));
    }

    let mut coords: Vec<f64> = Vec::new();
    match spec.kind {
        GridKind::Spiral => {
            let count = spec.t * spec.r;
            for i in 0..count {
                let tau = i as f64 / count as f64;
                let radius = tau / 2.0;
                let angle = 2.0 * PI * spec.r as f64 * tau;
                coords.push(radius * angle.cos());
                coords.push(radius * angle.sin());
            }
        }
        GridKind::Polar => {
            for &radius in &polar_radii(spec.r) {
                for &angle in &polar_angles(spec.t) {
                    coords.push(radius * angle.cos());
                    coords.push(radius * angle.sin());
                }
            }
        }
        GridKind::ModifiedPolar | GridKind::LogModifiedPolar => {
            let radii = match spec.kind {
                GridKind::ModifiedPolar => polar_radii(spec.r),
                _ => log_radii(spec.r, spec.log_ratio),
            };
            let scale = 2.0f64.sqrt();
            for &radius in &radii {
                for &angle in &polar_angles(spec.t) {
                    let x = scale * radius * angle.cos();
                    let y = scale * radius * angle.sin();
                    if in_square(x, y) {
                        coords.push(x);
                        coords.push(y);
                    }
                }
            }
        }
        GridKind::Equispaced => {
            for i in 0..spec.r {
                for j in 0..spec.r {
                    coords.push(i as f64 / spec.r as f64 - 0.5);
                    coords.push(j as f64 / spec.r as f64 - 0.5);
                }
            }
        }
        GridKind::Jittered => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let amplitude = spec.jitter;
            for i in 0..spec.r {
                for j in 0..spec.r {
                    let di = rng.gen_range(-amplitude..=amplitude);
                    let dj = rng.gen_range(-amplitude..=amplitude);
                    coords.push((i as f64 + 0.5 + di) / spec.r as f64 - 0.5);
                    coords.push((j as f64 + 0.5 + dj) / spec.r as f64 - 0.5);
                }
            }
        }
    }

    // canonicalize, then drop exact duplicates keeping first occurrences
    let mut seen = HashSet::new();
    let mut unique = Vec::with_capacity(coords.len());
    for pair in coords.chunks_exact(2) {
        let x = wrap_coordinate(pair[0]);
        let y = wrap_coordinate(pair[1]);
        if seen.insert((x.to_bits(), y.to_bits())) {
            unique.push(x);
            unique.push(y);
        }
    }
    SamplingSet::new(2, unique)
}
