//! Index sets, sampling geometry, and exact nonequispaced discrete Fourier transforms.
//!
//! The frequency index set for a [`Bandwidth`] with degree `M` and dimension `d` is
//! `I_M = Z^d ∩ [−M/2, M/2)^d`, enumerated lexicographically with the last axis
//! fastest. All spectral data in this crate uses that enumeration.

mod kernels;

pub use kernels::{
    dirichlet_kernel, sinc, sinc_d, sinc_matrix, sinc_matrix_budgeted, sinc_operator_section,
    sinc_operator_section_budgeted, DEFAULT_DENSE_ENTRY_BUDGET,
};

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Work guard for the direct transforms: `N · M^d` multiply-adds.
pub const DEFAULT_WORK_BUDGET: u128 = 1 << 31;

/// Frequency band: dimension `d` and even per-axis degree `M`.
///
/// Frequencies on each axis run `−M/2, ..., M/2 − 1`, so the index set has
/// `M^d` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bandwidth {
    d: usize,
    m: usize,
}

impl Bandwidth {
    /// `d ≥ 1`, `M` even and `≥ 2`. Fails if `M^d` does not fit in `usize`.
    pub fn new(d: usize, m: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter("dimension d must be at least 1".into()));
        }
        if m < 2 || m % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "degree M must be even and at least 2, got {}",
                m
            )));
        }
        let mut card: usize = 1;
        for _ in 0..d {
            card = card.checked_mul(m).ok_or_else(|| {
                Error::InvalidParameter(format!("index set size {}^{} overflows", m, d))
            })?;
        }
        Ok(Bandwidth { d, m })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Number of frequencies, `M^d`.
    pub fn cardinality(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    /// Same dimension with degree `2M`.
    pub fn doubled(&self) -> Result<Self> {
        Bandwidth::new(self.d, 2 * self.m)
    }

    /// Lowest frequency on each axis, `−M/2`.
    pub fn min_frequency(&self) -> i64 {
        -((self.m / 2) as i64)
    }

    /// One past the highest frequency on each axis, `M/2`.
    pub fn max_frequency_exclusive(&self) -> i64 {
        (self.m / 2) as i64
    }

    /// Multi-index at a flat enumeration position (last axis fastest).
    pub fn index_at(&self, mut flat: usize) -> Vec<i64> {
        assert!(flat < self.cardinality(), "flat index out of range");
        let mut idx = vec![0i64; self.d];
        for a in (0..self.d).rev() {
            let digit = flat % self.m;
            flat /= self.m;
            idx[a] = digit as i64 + self.min_frequency();
        }
        idx
    }

    /// Flat enumeration position of a multi-index, if it lies in the band.
    pub fn flat_of(&self, idx: &[i64]) -> Option<usize> {
        if idx.len() != self.d {
            return None;
        }
        let mut flat = 0usize;
        for &k in idx {
            if k < self.min_frequency() || k >= self.max_frequency_exclusive() {
                return None;
            }
            flat = flat * self.m + (k - self.min_frequency()) as usize;
        }
        Some(flat)
    }

    /// All multi-indices in enumeration order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.cardinality()).map(move |flat| self.index_at(flat))
    }
}

/// `N` points on the `d`-torus, stored as representatives in `[−1/2, 1/2)^d`.
///
/// Coordinates passed to the constructor are reduced mod 1 into that interval.
/// Point order is stable and defines the sample index `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingSet {
    d: usize,
    coords: Vec<f64>,
}

/// Reduce a coordinate mod 1 into `[−1/2, 1/2)`. In-range inputs pass through
/// unchanged so canonicalization never perturbs already-valid coordinates.
/// Negative zero is normalized to positive zero so canonical representatives
/// are unique down to the bit pattern.
pub fn wrap_coordinate(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if (-0.5..0.5).contains(&x) {
        return x;
    }
    let mut y = (x + 0.5).rem_euclid(1.0);
    if y >= 1.0 {
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs
        y = 0.0;
    }
    y - 0.5
}

impl SamplingSet {
    /// Builds a sampling set from flat coordinates (point-major: point `j`
    /// occupies `coords[j*d .. (j+1)*d]`). Requires at least one point.
    pub fn new(d: usize, coords: Vec<f64>) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter("dimension d must be at least 1".into()));
        }
        if coords.is_empty() || coords.len() % d != 0 {
            return Err(Error::Dimension {
                what: "sampling coordinates",
                expected: d.max(1),
                got: coords.len(),
            });
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("sampling coordinate is NaN or infinite".into()));
        }
        let coords = coords.into_iter().map(wrap_coordinate).collect();
        Ok(SamplingSet { d, coords })
    }

    /// Builds a sampling set from per-point coordinate slices.
    pub fn from_points(d: usize, points: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * d);
        for p in points {
            if p.len() != d {
                return Err(Error::Dimension {
                    what: "sampling point",
                    expected: d,
                    got: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        SamplingSet::new(d, coords)
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// Number of points `N`.
    pub fn len(&self) -> usize {
        self.coords.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinates of point `j` (0-based).
    pub fn point(&self, j: usize) -> &[f64] {
        &self.coords[j * self.d..(j + 1) * self.d]
    }

    pub fn iter_points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.d)
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// Complex values indexed by the frequencies of a [`Bandwidth`], in enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector {
    band: Bandwidth,
    values: Vec<Complex64>,
}

impl SpectralVector {
    pub fn new(band: Bandwidth, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != band.cardinality() {
            return Err(Error::Dimension {
                what: "spectral vector",
                expected: band.cardinality(),
                got: values.len(),
            });
        }
        Ok(SpectralVector { band, values })
    }

    pub fn zeros(band: Bandwidth) -> Self {
        let n = band.cardinality();
        SpectralVector {
            band,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn band(&self) -> Bandwidth {
        self.band
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Value at a multi-index, if it lies in the band.
    pub fn at(&self, idx: &[i64]) -> Option<Complex64> {
        self.band.flat_of(idx).map(|f| self.values[f])
    }
}

/// Complex values attached to the points of a [`SamplingSet`], in point order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleVector {
    values: Vec<Complex64>,
}

impl SampleVector {
    /// Crate-internal constructor for transform outputs whose length is
    /// correct by construction.
    pub(crate) fn from_values(values: Vec<Complex64>) -> Self {
        SampleVector { values }
    }

    /// Length must match the sampling set the values belong to.
    pub fn new(sampling: &SamplingSet, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != sampling.len() {
            return Err(Error::Dimension {
                what: "sample vector",
                expected: sampling.len(),
                got: values.len(),
            });
        }
        Ok(SampleVector { values })
    }

    pub fn zeros(sampling: &SamplingSet) -> Self {
        SampleVector {
            values: vec![Complex64::new(0.0, 0.0); sampling.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }
}

fn check_work(n: usize, band: Bandwidth, budget: u128) -> Result<()> {
    let work = n as u128 * band.cardinality() as u128;
    if work > budget {
        return Err(Error::TooLarge {
            what: "exact transform",
            requested: work,
            budget,
        });
    }
    Ok(())
}

/// Per-axis tables `e^{sign · 2πi k x_a}` for one point, `k = −M/2 .. M/2−1`.
fn phase_tables(point: &[f64], band: Bandwidth, sign: f64) -> Vec<Vec<Complex64>> {
    let m = band.degree();
    point
        .iter()
        .map(|&x| {
            (0..m)
                .map(|idx| {
                    let k = idx as i64 + band.min_frequency();
                    Complex64::from_polar(1.0, sign * 2.0 * PI * k as f64 * x)
                })
                .collect()
        })
        .collect()
}

fn contract(values: &[Complex64], tables: &[Vec<Complex64>]) -> Complex64 {
    let table = &tables[0];
    if tables.len() == 1 {
        return values
            .iter()
            .zip(table)
            .map(|(&v, &t)| v * t)
            .sum();
    }
    let stride = values.len() / table.len();
    table
        .iter()
        .enumerate()
        .map(|(i, &t)| t * contract(&values[i * stride..(i + 1) * stride], &tables[1..]))
        .sum()
}

fn accumulate(out: &mut [Complex64], scale: Complex64, tables: &[Vec<Complex64>]) {
    let table = &tables[0];
    if tables.len() == 1 {
        for (o, &t) in out.iter_mut().zip(table) {
            *o += scale * t;
        }
        return;
    }
    let stride = out.len() / table.len();
    for (i, &t) in table.iter().enumerate() {
        accumulate(&mut out[i * stride..(i + 1) * stride], scale * t, &tables[1..]);
    }
}

/// Evaluates the trigonometric polynomial with the given coefficients at every
/// sampling point: output `j` is `Σ_{k∈I_M} f̂_k e^{2πi k·x_j}`.
///
/// Direct summation in `O(N · M^d)`; this is the accuracy reference for the
/// fast transform.
pub fn ndft_forward(coeffs: &SpectralVector, sampling: &SamplingSet) -> Result<SampleVector> {
    ndft_forward_budgeted(coeffs, sampling, DEFAULT_WORK_BUDGET)
}

/// [`ndft_forward`] with an explicit work budget (`N · M^d` multiply-adds).
pub fn ndft_forward_budgeted(
    coeffs: &SpectralVector,
    sampling: &SamplingSet,
    budget: u128,
) -> Result<SampleVector> {
    let band = coeffs.band();
    if band.dimension() != sampling.dimension() {
        return Err(Error::Dimension {
            what: "transform dimension",
            expected: band.dimension(),
            got: sampling.dimension(),
        });
    }
    check_work(sampling.len(), band, budget)?;
    let values = sampling
        .iter_points()
        .map(|p| contract(coeffs.values(), &phase_tables(p, band, 1.0)))
        .collect();
    Ok(SampleVector { values })
}

/// Adjoint of [`ndft_forward`]: output `k` is `Σ_j v_j e^{−2πi k·x_j}`.
pub fn ndft_adjoint(
    samples: &SampleVector,
    sampling: &SamplingSet,
    band: Bandwidth,
) -> Result<SpectralVector> {
    ndft_adjoint_budgeted(samples, sampling, band, DEFAULT_WORK_BUDGET)
}

/// [`ndft_adjoint`] with an explicit work budget.
pub fn ndft_adjoint_budgeted(
    samples: &SampleVector,
    sampling: &SamplingSet,
    band: Bandwidth,
    budget: u128,
) -> Result<SpectralVector> {
    if band.dimension() != sampling.dimension() {
        return Err(Error::Dimension {
            what: "transform dimension",
            expected: band.dimension(),
            got: sampling.dimension(),
        });
    }
    if samples.len() != sampling.len() {
        return Err(Error::Dimension {
            what: "sample vector",
            expected: sampling.len(),
            got: samples.len(),
        });
    }
    check_work(sampling.len(), band, budget)?;
    let mut out = SpectralVector::zeros(band);
    for (p, &v) in sampling.iter_points().zip(samples.values()) {
        accumulate(out.values_mut(), v, &phase_tables(p, band, -1.0));
    }
    Ok(out)
}
