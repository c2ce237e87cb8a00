//! Equispaced DFT stage of the fast transform: a d-dimensional unnormalized
//! transform on a hypercube grid, with a fast FFT path and a naive
//! direct-summation path used to cross-check it in tests.
//!
//! Data layout is row-major with the last axis fastest, matching the
//! frequency enumeration used everywhere else. Transforms are unnormalized:
//! `forward` computes `Σ x_l e^{−2πi k·l/n}` and `inverse` computes
//! `Σ X_k e^{+2πi k·l/n}`.

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

/// Which DFT implementation backs the equispaced stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DftBackend {
    /// FFT, `O(n^d log n)`.
    Fast,
    /// Direct summation per axis, `O(d · n^(d+1))`; test use only.
    Naive,
}

pub(crate) struct GridDft {
    d: usize,
    n: usize,
    backend: DftBackend,
    fft_forward: Option<Arc<dyn Fft<f64>>>,
    fft_inverse: Option<Arc<dyn Fft<f64>>>,
}

impl GridDft {
    pub fn new(d: usize, n: usize, backend: DftBackend) -> Self {
        let (fft_forward, fft_inverse) = match backend {
            DftBackend::Fast => {
                let mut planner = FftPlanner::new();
                (
                    Some(planner.plan_fft(n, FftDirection::Forward)),
                    Some(planner.plan_fft(n, FftDirection::Inverse)),
                )
            }
            DftBackend::Naive => (None, None),
        };
        GridDft {
            d,
            n,
            backend,
            fft_forward,
            fft_inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// In-place unnormalized forward transform (`e^{−2πi}` kernel).
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, FftDirection::Forward);
    }

    /// In-place unnormalized inverse transform (`e^{+2πi}` kernel, no `1/n^d`).
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, FftDirection::Inverse);
    }

    fn transform(&self, data: &mut [Complex64], direction: FftDirection) {
        assert_eq!(data.len(), self.len(), "grid transform length mismatch");
        let n = self.n;
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        // process each axis in turn; a line along axis `a` has stride n^(d−1−a)
        for a in 0..self.d {
            let stride = n.pow((self.d - 1 - a) as u32);
            let block = stride * n;
            for base in 0..data.len() / block {
                for offset in 0..stride {
                    let first = base * block + offset;
                    for i in 0..n {
                        line[i] = data[first + i * stride];
                    }
                    self.transform_line(&mut line, direction);
                    for i in 0..n {
                        data[first + i * stride] = line[i];
                    }
                }
            }
        }
    }

    fn transform_line(&self, line: &mut [Complex64], direction: FftDirection) {
        match self.backend {
            DftBackend::Fast => {
                let plan = match direction {
                    FftDirection::Forward => self.fft_forward.as_ref().unwrap(),
                    FftDirection::Inverse => self.fft_inverse.as_ref().unwrap(),
                };
                plan.process(line);
            }
            DftBackend::Naive => {
                let n = self.n;
                let sign = match direction {
                    FftDirection::Forward => -1.0,
                    FftDirection::Inverse => 1.0,
                };
                let mut out = vec![Complex64::new(0.0, 0.0); n];
                for (k, o) in out.iter_mut().enumerate() {
                    for (l, &v) in line.iter().enumerate() {
                        let phase =
                            sign * 2.0 * std::f64::consts::PI * (k * l % n) as f64 / n as f64;
                        *o += v * Complex64::from_polar(1.0, phase);
                    }
                }
                line.copy_from_slice(&out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_data(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
        (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    #[test]
    fn fast_and_naive_agree_1d() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in [4usize, 8, 20] {
            let data = random_data(&mut rng, n);
            let fast = GridDft::new(1, n, DftBackend::Fast);
            let naive = GridDft::new(1, n, DftBackend::Naive);
            for dir in [FftDirection::Forward, FftDirection::Inverse] {
                let mut a = data.clone();
                let mut b = data.clone();
                fast.transform(&mut a, dir);
                naive.transform(&mut b, dir);
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).norm() < 1e-11, "n = {}", n);
                }
            }
        }
    }

    #[test]
    fn fast_and_naive_agree_2d() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let n = 8;
        let data = random_data(&mut rng, n * n);
        let fast = GridDft::new(2, n, DftBackend::Fast);
        let naive = GridDft::new(2, n, DftBackend::Naive);
        let mut a = data.clone();
        let mut b = data;
        fast.forward(&mut a);
        naive.forward(&mut b);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-11);
        }
    }

    #[test]
    fn forward_then_inverse_scales_by_grid_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let n = 6;
        let original = random_data(&mut rng, n * n);
        let dft = GridDft::new(2, n, DftBackend::Fast);
        let mut data = original.clone();
        dft.forward(&mut data);
        dft.inverse(&mut data);
        let scale = (n * n) as f64;
        for (x, y) in data.iter().zip(&original) {
            assert!((x / scale - y).norm() < 1e-12);
        }
    }

    #[test]
    fn naive_matches_explicit_2d_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let n = 4;
        let data = random_data(&mut rng, n * n);
        let dft = GridDft::new(2, n, DftBackend::Naive);
        let mut out = data.clone();
        dft.forward(&mut out);
        for k0 in 0..n {
            for k1 in 0..n {
                let mut expect = Complex64::new(0.0, 0.0);
                for l0 in 0..n {
                    for l1 in 0..n {
                        let phase = -2.0 * std::f64::consts::PI
                            * ((k0 * l0 + k1 * l1) as f64)
                            / n as f64;
                        expect += data[l0 * n + l1] * Complex64::from_polar(1.0, phase);
                    }
                }
                assert!((out[k0 * n + k1] - expect).norm() < 1e-12);
            }
        }
    }
}
