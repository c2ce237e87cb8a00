//! Test signals for the reconstruction experiments: the Shepp-Logan head
//! phantom (treated as a vector of Fourier coefficients) and the triangular
//! pulse with its closed-form space-domain samples, plus the reconstruction
//! and error metrics shared by the experiments.

use crate::dcf::{BandTransform, TransformMode, WeightVector};
use crate::error::{Error, Result};
use crate::fourier::{ndft_forward, sinc, Bandwidth, SampleVector, SamplingSet, SpectralVector};
use num_complex::Complex64;

/// Ellipse rows of the Shepp-Logan phantom with the usual adjusted
/// intensities: (additive intensity, semi-axis a, semi-axis b, center x,
/// center y, rotation in degrees), all in the conventional `[−1, 1]²` frame.
const SHEPP_LOGAN_ELLIPSES: [(f64, f64, f64, f64, f64, f64); 10] = [
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    (-0.2, 0.11, 0.31, 0.22, 0.0, -18.0),
    (-0.2, 0.16, 0.41, -0.22, 0.0, 18.0),
    (0.1, 0.21, 0.25, 0.0, 0.35, 0.0),
    (0.1, 0.046, 0.046, 0.0, 0.1, 0.0),
    (0.1, 0.046, 0.046, 0.0, -0.1, 0.0),
    (0.1, 0.046, 0.023, -0.08, -0.605, 0.0),
    (0.1, 0.023, 0.023, 0.0, -0.606, 0.0),
    (0.1, 0.023, 0.046, 0.06, -0.605, 0.0),
];

/// An `M × M` grayscale image whose pixels double as the real Fourier
/// coefficients of a degree-`M` trigonometric polynomial.
///
/// Pixels are stored row-major with row 0 at the top and the y axis pointing
/// up, so pixel `(row, col)` sits at `x = (col + 1/2)/M − 1/2`,
/// `y = 1/2 − (row + 1/2)/M`. The flat pixel index coincides with the
/// frequency enumeration of the band: pixel `(row, col)` carries the
/// coefficient at `k = (row − M/2, col − M/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhantomImage {
    band: Bandwidth,
    pixels: Vec<f64>,
}

impl PhantomImage {
    pub fn band(&self) -> Bandwidth {
        self.band
    }

    /// Side length `M`.
    pub fn size(&self) -> usize {
        self.band.degree()
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn pixel(&self, row: usize, col: usize) -> f64 {
        let m = self.size();
        assert!(row < m && col < m, "pixel index out of range");
        self.pixels[row * m + col]
    }

    /// The pixels reinterpreted as real Fourier coefficients on the band.
    pub fn to_spectrum(&self) -> SpectralVector {
        let values = self
            .pixels
            .iter()
            .map(|&p| Complex64::new(p, 0.0))
            .collect();
        SpectralVector::new(self.band, values).expect("pixel count matches band cardinality")
    }
}

/// Rasterizes the 10-ellipse Shepp-Logan phantom on an `M × M` grid of pixel
/// centers over `[−1/2, 1/2)²`. Each pixel sums the intensities of the
/// ellipses containing its center; the result is clamped to `[0, 1]`.
/// `M` must be even and at least 16.
pub fn shepp_logan(m: usize) -> Result<PhantomImage> {
    if m < 16 {
        return Err(Error::InvalidParameter(format!(
            "phantom size must be at least 16, got {}",
            m
        )));
    }
    let band = Bandwidth::new(2, m)?;
    let mut pixels = Vec::with_capacity(m * m);
    for row in 0..m {
        // phantom frame coordinates in [−1, 1]
        let y = 2.0 * (0.5 - (row as f64 + 0.5) / m as f64);
        for col in 0..m {
            let x = 2.0 * ((col as f64 + 0.5) / m as f64 - 0.5);
            let mut value = 0.0;
            for &(intensity, a, b, x0, y0, phi_deg) in &SHEPP_LOGAN_ELLIPSES {
                let phi = phi_deg.to_radians();
                let (s, c) = phi.sin_cos();
                let dx = x - x0;
                let dy = y - y0;
                let u = dx * c + dy * s;
                let v = -dx * s + dy * c;
                if (u / a).powi(2) + (v / b).powi(2) <= 1.0 {
                    value += intensity;
                }
            }
            pixels.push(value.clamp(0.0, 1.0));
        }
    }
    Ok(PhantomImage { band, pixels })
}

/// The separable triangular pulse: spectrum `Π_a (1 − |v_a|/b)` supported on
/// `[−b, b]^d`, space-domain signal `b^d Π_a sinc²(bπ x_a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularPulse {
    band: Bandwidth,
    halfwidth: usize,
}

impl TriangularPulse {
    /// `halfwidth` is the support bound `b`; it must satisfy `1 ≤ b ≤ M/2` so
    /// the spectrum fits inside the band.
    pub fn new(band: Bandwidth, halfwidth: usize) -> Result<Self> {
        if halfwidth < 1 || 2 * halfwidth > band.degree() {
            return Err(Error::InvalidParameter(format!(
                "pulse halfwidth must satisfy 1 <= b <= M/2, got b = {} with M = {}",
                halfwidth,
                band.degree()
            )));
        }
        Ok(TriangularPulse { band, halfwidth })
    }

    pub fn band(&self) -> Bandwidth {
        self.band
    }

    pub fn halfwidth(&self) -> usize {
        self.halfwidth
    }

    /// Continuous spectrum at frequency `v`.
    pub fn spectrum_at(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.band.dimension(), "frequency dimension");
        let b = self.halfwidth as f64;
        v.iter()
            .map(|&va| (1.0 - va.abs() / b).max(0.0))
            .product()
    }

    /// The spectrum sampled on the integer frequencies of the band.
    pub fn spectrum_on_band(&self) -> SpectralVector {
        let values = (0..self.band.cardinality())
            .map(|flat| {
                let idx = self.band.index_at(flat);
                let v: Vec<f64> = idx.iter().map(|&k| k as f64).collect();
                Complex64::new(self.spectrum_at(&v), 0.0)
            })
            .collect();
        SpectralVector::new(self.band, values).expect("length matches band")
    }

    /// Exact samples of the non-periodized pulse at the canonical
    /// representatives of the sampling points.
    pub fn samples_exact(&self, sampling: &SamplingSet) -> Result<SampleVector> {
        if sampling.dimension() != self.band.dimension() {
            return Err(Error::Dimension {
                what: "pulse sampling dimension",
                expected: self.band.dimension(),
                got: sampling.dimension(),
            });
        }
        let b = self.halfwidth as f64;
        let values = sampling
            .iter_points()
            .map(|p| {
                let f: f64 = p
                    .iter()
                    .map(|&x| {
                        let s = sinc(b * std::f64::consts::PI * x);
                        b * s * s
                    })
                    .product();
                Complex64::new(f, 0.0)
            })
            .collect();
        SampleVector::new(sampling, values)
    }
}

/// Samples of the trigonometric polynomial with the given coefficients at the
/// sampling points, by exact summation. For a band-limited spectrum this is
/// the periodization of the underlying signal evaluated at the points.
pub fn periodized_samples(
    spectrum: &SpectralVector,
    sampling: &SamplingSet,
) -> Result<SampleVector> {
    ndft_forward(spectrum, sampling)
}

/// Weighted adjoint reconstruction: `h_k = Σ_j w_j f(x_j) e^{−2πik·x_j}` for
/// `k` in the band.
pub fn reconstruct(
    samples: &SampleVector,
    weights: &WeightVector,
    sampling: &SamplingSet,
    band: Bandwidth,
    mode: TransformMode,
) -> Result<SpectralVector> {
    if samples.values().len() != sampling.len() {
        return Err(Error::Dimension {
            what: "reconstruction samples",
            expected: sampling.len(),
            got: samples.values().len(),
        });
    }
    if weights.len() != sampling.len() {
        return Err(Error::Dimension {
            what: "reconstruction weights",
            expected: sampling.len(),
            got: weights.len(),
        });
    }
    let weighted: Vec<Complex64> = weights
        .values()
        .iter()
        .zip(samples.values())
        .map(|(w, f)| w * f)
        .collect();
    let transform = BandTransform::at_band(sampling, band, mode)?;
    let values = transform.adjoint_raw(&weighted);
    SpectralVector::new(band, values)
}

/// Relative `ℓ₂` error `‖recon − truth‖₂ / ‖truth‖₂` over the band.
pub fn relative_error(recon: &SpectralVector, truth: &SpectralVector) -> Result<f64> {
    if recon.band() != truth.band() {
        return Err(Error::Dimension {
            what: "error bands",
            expected: truth.band().cardinality(),
            got: recon.band().cardinality(),
        });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, b) in recon.values().iter().zip(truth.values()) {
        num += (a - b).norm_sqr();
        den += b.norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::InvalidParameter(
            "reference spectrum has zero norm".into(),
        ));
    }
    Ok((num / den).sqrt())
}

/// Pointwise error magnitudes `|h_k − f̂_k|` arranged as an `M × M` row-major
/// image (two-dimensional bands only). The Frobenius norm of the image equals
/// the `ℓ₂` norm of the coefficient difference.
pub fn pointwise_error_image(
    recon: &SpectralVector,
    truth: &SpectralVector,
) -> Result<Vec<f64>> {
    if recon.band() != truth.band() {
        return Err(Error::Dimension {
            what: "error bands",
            expected: truth.band().cardinality(),
            got: recon.band().cardinality(),
        });
    }
    if recon.band().dimension() != 2 {
        return Err(Error::Dimension {
            what: "error image dimension",
            expected: 2,
            got: recon.band().dimension(),
        });
    }
    Ok(recon
        .values()
        .iter()
        .zip(truth.values())
        .map(|(a, b)| (a - b).norm())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcf::uniform_weights;
    use crate::grids::{generate, GridKind, GridSpec};

    #[test]
    fn phantom_rejects_small_or_odd_sizes() {
        assert!(shepp_logan(8).is_err());
        assert!(shepp_logan(17).is_err());
        assert!(shepp_logan(16).is_ok());
    }

    #[test]
    fn phantom_has_expected_landmark_values() {
        let p = shepp_logan(64).unwrap();
        assert!(p.pixels().iter().all(|&v| (0.0..=1.0).contains(&v)));
        // outside the skull
        assert_eq!(p.pixel(0, 0), 0.0);
        assert_eq!(p.pixel(63, 63), 0.0);
        // brain interior near the center: skull minus the second ellipse
        assert!((p.pixel(32, 32) - 0.2).abs() < 1e-12);
        // skull rim near the top: inside the outer ellipse only
        assert_eq!(p.pixel(3, 32), 1.0);
    }

    #[test]
    fn phantom_spectrum_shares_the_pixel_enumeration() {
        let p = shepp_logan(16).unwrap();
        let spectrum = p.to_spectrum();
        assert_eq!(spectrum.band(), p.band());
        for row in 0..16 {
            for col in 0..16 {
                let k = [row as i64 - 8, col as i64 - 8];
                assert_eq!(
                    spectrum.at(&k).unwrap(),
                    Complex64::new(p.pixel(row, col), 0.0)
                );
            }
        }
    }

    #[test]
    fn pulse_rejects_out_of_band_halfwidth() {
        let band = Bandwidth::new(2, 32).unwrap();
        assert!(TriangularPulse::new(band, 0).is_err());
        assert!(TriangularPulse::new(band, 17).is_err());
        assert!(TriangularPulse::new(band, 16).is_ok());
    }

    #[test]
    fn pulse_spectrum_support_and_peak() {
        let band = Bandwidth::new(2, 32).unwrap();
        let pulse = TriangularPulse::new(band, 12).unwrap();
        let s = pulse.spectrum_on_band();
        assert_eq!(s.at(&[0, 0]).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(s.at(&[12, 0]).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(s.at(&[-13, 4]).unwrap(), Complex64::new(0.0, 0.0));
        let inside = s.at(&[6, -3]).unwrap().re;
        assert!((inside - 0.5 * 0.75).abs() < 1e-15);
    }

    #[test]
    fn pulse_samples_peak_at_the_origin() {
        let band = Bandwidth::new(2, 32).unwrap();
        let pulse = TriangularPulse::new(band, 12).unwrap();
        let sampling = SamplingSet::new(2, vec![0.0, 0.0, 0.25, 0.0]).unwrap();
        let samples = pulse.samples_exact(&sampling).unwrap();
        assert!((samples.values()[0].re - 144.0).abs() < 1e-12);
        assert_eq!(samples.values()[0].im, 0.0);
        assert!(samples.values()[1].re < 144.0);
    }

    #[test]
    fn uniform_weights_on_the_full_grid_reconstruct_exactly() {
        let m = 16;
        let p = shepp_logan(m).unwrap();
        let truth = p.to_spectrum();
        let sampling = generate(&GridSpec::new(GridKind::Equispaced, m)).unwrap();
        let weights = uniform_weights(&sampling, p.band()).unwrap();
        let samples = periodized_samples(&truth, &sampling).unwrap();
        let recon = reconstruct(
            &samples,
            &weights,
            &sampling,
            p.band(),
            TransformMode::Direct,
        )
        .unwrap();
        let err = relative_error(&recon, &truth).unwrap();
        assert!(err < 1e-12, "equispaced reconstruction error {}", err);
    }

    #[test]
    fn error_metrics_reject_mismatched_bands_and_zero_truth() {
        let a = SpectralVector::zeros(Bandwidth::new(2, 16).unwrap());
        let b = SpectralVector::zeros(Bandwidth::new(2, 18).unwrap());
        assert!(relative_error(&a, &b).is_err());
        let z = SpectralVector::zeros(Bandwidth::new(2, 16).unwrap());
        assert!(relative_error(&a, &z).is_err());
        let one_d = SpectralVector::zeros(Bandwidth::new(1, 16).unwrap());
        assert!(pointwise_error_image(&one_d, &one_d).is_err());
    }

    #[test]
    fn pointwise_error_image_matches_coefficient_differences() {
        let band = Bandwidth::new(2, 16).unwrap();
        let mut recon = SpectralVector::zeros(band);
        let truth = SpectralVector::zeros(band);
        let mut with_truth = truth.clone();
        with_truth.values_mut()[0] = Complex64::new(1.0, 0.0);
        recon.values_mut()[37] = Complex64::new(0.0, -2.0);
        let image = pointwise_error_image(&recon, &with_truth).unwrap();
        assert_eq!(image.len(), 256);
        assert_eq!(image[0], 1.0);
        assert_eq!(image[37], 2.0);
        assert!(image.iter().filter(|&&v| v != 0.0).count() == 2);
    }
}
