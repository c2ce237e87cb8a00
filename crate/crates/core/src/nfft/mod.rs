//! Fast approximate nonequispaced Fourier transform.
//!
//! A plan fixes the band, the sampling geometry, and the window
//! precomputation; it can then run any number of forward or adjoint
//! transforms. The forward path deconvolves the coefficients by the window's
//! spectral factors, runs an equispaced inverse FFT on an oversampled grid,
//! and evaluates the windowed sum at each sampling point; the adjoint path
//! mirrors those steps, so the two transforms form an exactly adjoint pair.

mod fft;
mod window;

pub use fft::DftBackend;

use crate::error::{Error, Result};
use crate::fourier::{Bandwidth, SampleVector, SamplingSet, SpectralVector};
use fft::GridDft;
use num_complex::Complex64;
use window::KaiserBessel;

/// Entry budget for the oversampled grid.
pub const DEFAULT_GRID_BUDGET: usize = 1 << 26;

#[derive(Debug, Clone, Copy)]
pub struct NfftOptions {
    /// Oversampling factor, in `[1.25, 4]`.
    pub oversampling: f64,
    /// Window cutoff `m` (support `2m+1` grid points per axis), in `[2, 12]`.
    pub cutoff: usize,
    pub backend: DftBackend,
}

impl Default for NfftOptions {
    fn default() -> Self {
        NfftOptions {
            oversampling: 2.0,
            cutoff: 6,
            backend: DftBackend::Fast,
        }
    }
}

/// Window support of one point along one axis: oversampled-grid bins (already
/// wrapped mod `n`) and the matching window values.
#[derive(Debug, Clone)]
struct AxisSupport {
    bins: Vec<u32>,
    values: Vec<f64>,
}

/// Precomputed fast-transform geometry for one band and sampling set.
pub struct NfftPlan {
    band: Bandwidth,
    n_points: usize,
    oversampled: usize,
    cutoff: usize,
    dft: GridDft,
    /// `1/(n·φ̂(k))` for `k = −M/2 .. M/2−1`; axes share the table.
    deconv: Vec<f64>,
    /// FFT bin of each centered frequency `k = −M/2 .. M/2−1`.
    freq_bins: Vec<u32>,
    /// Point-major, then axis: `supports[j*d + a]`.
    supports: Vec<AxisSupport>,
}

impl NfftPlan {
    pub fn new(band: Bandwidth, sampling: &SamplingSet, options: NfftOptions) -> Result<Self> {
        if sampling.dimension() != band.dimension() {
            return Err(Error::Dimension {
                what: "plan dimension",
                expected: band.dimension(),
                got: sampling.dimension(),
            });
        }
        if !(1.25..=4.0).contains(&options.oversampling) {
            return Err(Error::InvalidParameter(format!(
                "oversampling factor must lie in [1.25, 4], got {}",
                options.oversampling
            )));
        }
        if !(2..=12).contains(&options.cutoff) {
            return Err(Error::InvalidParameter(format!(
                "window cutoff must lie in [2, 12], got {}",
                options.cutoff
            )));
        }
        let m = band.degree();
        let mut oversampled = (options.oversampling * m as f64).ceil() as usize;
        if oversampled % 2 == 1 {
            oversampled += 1;
        }
        let d = band.dimension();
        let mut grid_len: u128 = 1;
        for _ in 0..d {
            grid_len *= oversampled as u128;
        }
        if grid_len > DEFAULT_GRID_BUDGET as u128 {
            return Err(Error::TooLarge {
                what: "oversampled grid",
                requested: grid_len,
                budget: DEFAULT_GRID_BUDGET as u128,
            });
        }

        let kb = KaiserBessel::new(options.cutoff, oversampled, m);
        let half = (m / 2) as i64;
        let deconv: Vec<f64> = (-half..half).map(|k| kb.deconvolution_factor(k)).collect();
        let freq_bins: Vec<u32> = (-half..half)
            .map(|k| k.rem_euclid(oversampled as i64) as u32)
            .collect();

        let n = oversampled as f64;
        let cutoff = options.cutoff as f64;
        let mut supports = Vec::with_capacity(sampling.len() * d);
        for point in sampling.iter_points() {
            for &x in point {
                let u = n * x;
                let lo = (u - cutoff).ceil() as i64;
                let hi = (u + cutoff).floor() as i64;
                let mut bins = Vec::with_capacity((hi - lo + 1) as usize);
                let mut values = Vec::with_capacity((hi - lo + 1) as usize);
                for l in lo..=hi {
                    bins.push(l.rem_euclid(oversampled as i64) as u32);
                    values.push(kb.value_at(u - l as f64));
                }
                supports.push(AxisSupport { bins, values });
            }
        }

        Ok(NfftPlan {
            band,
            n_points: sampling.len(),
            oversampled,
            cutoff: options.cutoff,
            dft: GridDft::new(d, oversampled, options.backend),
            deconv,
            freq_bins,
            supports,
        })
    }

    pub fn band(&self) -> Bandwidth {
        self.band
    }

    pub fn num_points(&self) -> usize {
        self.n_points
    }

    /// Oversampled grid size per axis (even, ≥ oversampling · M).
    pub fn oversampled_size(&self) -> usize {
        self.oversampled
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Grid position of a frequency multi-index, walking the digits of `flat`.
    fn scatter_positions(&self) -> ScatterIter<'_> {
        ScatterIter {
            plan: self,
            digits: vec![0; self.band.dimension()],
            first: true,
        }
    }

    /// Approximates the direct forward transform: evaluates the polynomial
    /// with the given coefficients at every sampling point.
    pub fn forward(&self, coeffs: &SpectralVector) -> Result<SampleVector> {
        if coeffs.band() != self.band {
            return Err(Error::Dimension {
                what: "plan coefficients",
                expected: self.band.cardinality(),
                got: coeffs.band().cardinality(),
            });
        }
        let mut grid = vec![Complex64::new(0.0, 0.0); self.dft.len()];
        for (flat, (pos, scale)) in self.scatter_positions().enumerate() {
            grid[pos] = coeffs.values()[flat] * scale;
        }
        self.dft.inverse(&mut grid);

        let d = self.band.dimension();
        let stride = self.oversampled.pow((d - 1) as u32);
        let values = (0..self.n_points)
            .map(|j| {
                gather_at(&grid, &self.supports[j * d..(j + 1) * d], self.oversampled, stride, 0)
            })
            .collect();
        Ok(SampleVector::from_values(values))
    }

    /// Approximates the direct adjoint transform of the sample values.
    pub fn adjoint(&self, samples: &SampleVector) -> Result<SpectralVector> {
        if samples.len() != self.n_points {
            return Err(Error::Dimension {
                what: "plan samples",
                expected: self.n_points,
                got: samples.len(),
            });
        }
        let d = self.band.dimension();
        let stride = self.oversampled.pow((d - 1) as u32);
        let mut grid = vec![Complex64::new(0.0, 0.0); self.dft.len()];
        for (j, &v) in samples.values().iter().enumerate() {
            spread(
                &mut grid,
                &self.supports[j * d..(j + 1) * d],
                self.oversampled,
                stride,
                v,
            );
        }
        self.dft.forward(&mut grid);

        let mut out = SpectralVector::zeros(self.band);
        for (flat, (pos, scale)) in self.scatter_positions().enumerate() {
            out.values_mut()[flat] = grid[pos] * scale;
        }
        Ok(out)
    }
}

/// Iterates `(grid position, deconvolution scale)` over the band's
/// frequencies in enumeration order without per-index allocation.
struct ScatterIter<'a> {
    plan: &'a NfftPlan,
    digits: Vec<usize>,
    first: bool,
}

impl Iterator for ScatterIter<'_> {
    type Item = (usize, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let m = self.plan.band.degree();
        if self.first {
            self.first = false;
        } else {
            let mut a = self.digits.len();
            loop {
                if a == 0 {
                    return None;
                }
                a -= 1;
                self.digits[a] += 1;
                if self.digits[a] < m {
                    break;
                }
                self.digits[a] = 0;
            }
        }
        let mut pos = 0usize;
        let mut scale = 1.0;
        for &digit in &self.digits {
            pos = pos * self.plan.oversampled + self.plan.freq_bins[digit] as usize;
            scale *= self.plan.deconv[digit];
        }
        Some((pos, scale))
    }
}

fn gather_at(
    grid: &[Complex64],
    axes: &[AxisSupport],
    n: usize,
    stride: usize,
    base: usize,
) -> Complex64 {
    let ax = &axes[0];
    if axes.len() == 1 {
        return ax
            .bins
            .iter()
            .zip(&ax.values)
            .map(|(&b, &v)| grid[base + b as usize] * v)
            .sum();
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (&b, &v) in ax.bins.iter().zip(&ax.values) {
        acc += v * gather_at(grid, &axes[1..], n, stride / n, base + b as usize * stride);
    }
    acc
}

fn spread(grid: &mut [Complex64], axes: &[AxisSupport], n: usize, stride: usize, value: Complex64) {
    spread_at(grid, axes, n, stride, 0, value);
}

fn spread_at(
    grid: &mut [Complex64],
    axes: &[AxisSupport],
    n: usize,
    stride: usize,
    base: usize,
    value: Complex64,
) {
    let ax = &axes[0];
    if axes.len() == 1 {
        for (&b, &v) in ax.bins.iter().zip(&ax.values) {
            grid[base + b as usize] += value * v;
        }
        return;
    }
    for (&b, &v) in ax.bins.iter().zip(&ax.values) {
        spread_at(grid, &axes[1..], n, stride / n, base + b as usize * stride, value * v);
    }
}
