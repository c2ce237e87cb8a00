//! Oracle tests for the weight schemes: dense least-squares and
//! pseudo-inverse oracles, explicit matrix products, and brute-force pair
//! counting, all constructed independently in this file.

use infft_core::dcf::{
    frobenius_apply, frobenius_matrix_dense, frobenius_objective, pair_counts,
    quadrature_residual, uniform_weights, weights_first_kind, weights_frobenius,
    weights_second_kind, weights_sinc_ls, DcfOptions, FrobeniusMode, ObjectiveMode, TransformMode,
    WeightScheme, WeightVector,
};
use infft_core::fourier::{
    ndft_adjoint, ndft_forward, sinc_matrix, Bandwidth, SampleVector, SamplingSet, SpectralVector,
};
use infft_core::solver::dense_solve;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn jittered_1d(rng: &mut ChaCha8Rng, n: usize) -> SamplingSet {
    let coords = (0..n)
        .map(|j| (j as f64 + rng.gen_range(-0.3..0.3)) / n as f64 - 0.5)
        .collect();
    SamplingSet::new(1, coords).unwrap()
}

fn random_points(rng: &mut ChaCha8Rng, d: usize, n: usize) -> SamplingSet {
    let coords = (0..n * d).map(|_| rng.gen_range(-0.5..0.5)).collect();
    SamplingSet::new(d, coords).unwrap()
}

/// Well-spread 2-d points: a rows×cols grid with per-cell jitter, the
/// geometry needed for a well-conditioned doubled-band Gram matrix.
fn jittered_2d(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> SamplingSet {
    let mut coords = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            coords.push((i as f64 + 0.5 + rng.gen_range(-0.3..0.3)) / rows as f64 - 0.5);
            coords.push((j as f64 + 0.5 + rng.gen_range(-0.3..0.3)) / cols as f64 - 0.5);
        }
    }
    SamplingSet::new(2, coords).unwrap()
}

/// Explicit doubled-band transposed system matrix: row `k ∈ I_2M`, column `j`,
/// entry `e^{2πi k·x_j}`.
fn doubled_system_matrix(sampling: &SamplingSet, band: Bandwidth) -> DMatrix<Complex64> {
    let band2 = band.doubled().unwrap();
    let rows = band2.cardinality();
    let n = sampling.len();
    let mut out = DMatrix::<Complex64>::zeros(rows, n);
    for (row, k) in band2.indices().enumerate() {
        for (j, p) in sampling.iter_points().enumerate() {
            let phase: f64 = k
                .iter()
                .zip(p)
                .map(|(&ki, &xi)| ki as f64 * xi)
                .sum::<f64>()
                * 2.0
                * PI;
            out[(row, j)] = Complex64::from_polar(1.0, phase);
        }
    }
    out
}

fn norm(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn second_kind_jittered_residual_is_tiny() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let band = Bandwidth::new(1, 4).unwrap();
    let sampling = jittered_1d(&mut rng, 20);
    let options = DcfOptions::default();
    let (w, report) = weights_second_kind(&sampling, band, &options).unwrap();
    assert!(report.converged);
    assert!(w.exactness_regime());
    let r = quadrature_residual(&w, &sampling, band, &options).unwrap();
    assert!(r.max_abs < 1e-8, "max_abs = {:.3e}", r.max_abs);
    assert!(r.at_zero_error <= r.max_abs + 1e-18);
}

#[test]
fn second_kind_larger_jittered_set_passes_quadrature_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let band = Bandwidth::new(1, 4).unwrap();
    let sampling = jittered_1d(&mut rng, 70);
    let options = DcfOptions::default();
    let (w, report) = weights_second_kind(&sampling, band, &options).unwrap();
    assert!(report.converged);
    let r = quadrature_residual(&w, &sampling, band, &options).unwrap();
    assert!(r.max_abs < 1e-8);
}

/// With `|I_2M| ≤ N` and a converged solve, reconstruction of a random
/// degree-M polynomial from its nonequispaced samples is exact.
#[test]
fn theorem_round_trip_reconstructs_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let band = Bandwidth::new(2, 4).unwrap();
    let sampling = jittered_2d(&mut rng, 9, 8);
    let options = DcfOptions::default();
    let (w, report) = weights_second_kind(&sampling, band, &options).unwrap();
    assert!(report.converged);
    assert!(w.exactness_regime());

    for _ in 0..5 {
        let coeffs = SpectralVector::new(
            band,
            (0..band.cardinality())
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap();
        let samples = ndft_forward(&coeffs, &sampling).unwrap();
        let weighted = SampleVector::new(
            &sampling,
            samples
                .values()
                .iter()
                .zip(w.values())
                .map(|(&f, &wj)| wj * f)
                .collect(),
        )
        .unwrap();
        let recon = ndft_adjoint(&weighted, &sampling, band).unwrap();
        let err: f64 = recon
            .values()
            .iter()
            .zip(coeffs.values())
            .map(|(&a, &b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let rel = err / norm(coeffs.values());
        assert!(rel <= 1e-7, "relative reconstruction error {:.3e}", rel);
    }
}

/// In the overdetermined regime the first-kind weights must reach the same
/// least-squares residual as a dense normal-equations solve.
#[test]
fn first_kind_matches_dense_least_squares_oracle() {
    // |I_2M| = 32 > N = 20: genuinely overdetermined
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let band = Bandwidth::new(1, 16).unwrap();
    let sampling = jittered_1d(&mut rng, 20);
    let options = DcfOptions::default();
    let (w, _report) = weights_first_kind(&sampling, band, &options).unwrap();
    assert!(!w.exactness_regime());

    let a_t = doubled_system_matrix(&sampling, band);
    let mut e0 = DMatrix::<Complex64>::zeros(a_t.nrows(), 1);
    let band2 = band.doubled().unwrap();
    e0[(band2.flat_of(&[0]).unwrap(), 0)] = Complex64::new(1.0, 0.0);

    // unique LS solution through the dense normal equations (full column rank)
    let normal = a_t.adjoint() * &a_t;
    let rhs_vec = a_t.adjoint() * &e0;
    let rhs: Vec<Complex64> = rhs_vec.iter().copied().collect();
    let w_dense = dense_solve(&normal, &rhs).unwrap();

    let residual_of = |wv: &[Complex64]| -> f64 {
        let wv = DMatrix::<Complex64>::from_iterator(wv.len(), 1, wv.iter().copied());
        (&a_t * wv - &e0).norm()
    };
    let r_scheme = residual_of(w.values());
    let r_dense = residual_of(&w_dense);
    assert!(
        (r_scheme - r_dense).abs() < 1e-8,
        "scheme {:.12e} vs dense {:.12e}",
        r_scheme,
        r_dense
    );
    for (a, b) in w.values().iter().zip(&w_dense) {
        assert!((a - b).norm() < 1e-6);
    }

    // the residual reported through the quadrature check is the same quantity
    let q = quadrature_residual(&w, &sampling, band, &options).unwrap();
    assert!((q.l2 - r_scheme).abs() < 1e-9);
}

#[test]
fn first_kind_single_point_rank_one_system() {
    let band = Bandwidth::new(1, 2).unwrap();
    let sampling = SamplingSet::new(1, vec![0.3]).unwrap();
    let options = DcfOptions::default();
    let (w, _report) = weights_first_kind(&sampling, band, &options).unwrap();

    // dense pseudo-inverse of the 4x1 system: w = (aᴴa)⁻¹ aᴴ e_0
    let a_t = doubled_system_matrix(&sampling, band);
    let band2 = band.doubled().unwrap();
    let zero_row = band2.flat_of(&[0]).unwrap();
    let col: Vec<Complex64> = (0..a_t.nrows()).map(|r| a_t[(r, 0)]).collect();
    let denom: f64 = col.iter().map(|z| z.norm_sqr()).sum();
    let expect = col[zero_row].conj() / denom;
    assert!((w.values()[0] - expect).norm() < 1e-10);
}

#[test]
fn first_and_second_kind_agree_in_exactness_regime() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let band = Bandwidth::new(1, 4).unwrap();
    let sampling = jittered_1d(&mut rng, 40);
    let options = DcfOptions::default();
    let (w1, _) = weights_first_kind(&sampling, band, &options).unwrap();
    let (w2, _) = weights_second_kind(&sampling, band, &options).unwrap();
    let r1 = quadrature_residual(&w1, &sampling, band, &options).unwrap();
    let r2 = quadrature_residual(&w2, &sampling, band, &options).unwrap();
    assert!(r1.max_abs < 1e-6, "first kind {:.3e}", r1.max_abs);
    assert!(r2.max_abs < 1e-6, "second kind {:.3e}", r2.max_abs);
}

#[test]
fn dense_frobenius_matrix_equals_explicit_gram_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let band = Bandwidth::new(1, 4).unwrap();
    let sampling = random_points(&mut rng, 1, 6);
    let s = frobenius_matrix_dense(&sampling, band).unwrap();

    // explicit A (N×M), entries e^{2πi k x_j}
    let n = sampling.len();
    let card = band.cardinality();
    let mut a = DMatrix::<Complex64>::zeros(n, card);
    for (j, p) in sampling.iter_points().enumerate() {
        for (flat, k) in band.indices().enumerate() {
            a[(j, flat)] = Complex64::from_polar(1.0, 2.0 * PI * k[0] as f64 * p[0]);
        }
    }
    let gram = &a * a.adjoint();
    for j in 0..n {
        for t in 0..n {
            let expect = gram[(j, t)].norm_sqr();
            assert!(
                (s[(j, t)] - expect).abs() < 1e-10 * expect.max(1.0),
                "entry ({}, {}): {} vs {}",
                j,
                t,
                s[(j, t)],
                expect
            );
        }
    }
}

#[test]
fn matrix_free_application_matches_dense_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for (d, m, n) in [(1usize, 4usize, 6usize), (2, 6, 12), (2, 4, 9)] {
        let band = Bandwidth::new(d, m).unwrap();
        let sampling = random_points(&mut rng, d, n);
        let s = frobenius_matrix_dense(&sampling, band).unwrap();
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();

        let dense_apply: Vec<Complex64> = (0..n)
            .map(|j| (0..n).map(|t| s[(j, t)] * v[t]).sum())
            .collect();

        for transform in [TransformMode::Direct, TransformMode::Fast] {
            let options = DcfOptions {
                transform,
                ..DcfOptions::default()
            };
            let free_apply = frobenius_apply(&sampling, band, &v, &options).unwrap();
            let err: f64 = free_apply
                .iter()
                .zip(&dense_apply)
                .map(|(&a, &b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt()
                / norm(&dense_apply);
            assert!(
                err < 1e-9,
                "(d={}, M={}, N={}, {:?}): {:.3e}",
                d,
                m,
                n,
                transform,
                err
            );
        }
    }
}

#[test]
fn pair_counts_match_brute_force_counting() {
    for (d, m) in [(1usize, 6usize), (2, 4)] {
        let band = Bandwidth::new(d, m).unwrap();
        let band2 = band.doubled().unwrap();
        let counts = pair_counts(band).unwrap();
        assert_eq!(counts.len(), band2.cardinality());

        let freqs: Vec<Vec<i64>> = band.indices().collect();
        for (flat, target) in band2.indices().enumerate() {
            let mut brute = 0usize;
            for k in &freqs {
                for kp in &freqs {
                    if k.iter()
                        .zip(kp)
                        .zip(&target)
                        .all(|((&a, &b), &t)| a - b == t)
                    {
                        brute += 1;
                    }
                }
            }
            assert_eq!(
                counts[flat], brute as f64,
                "(d={}, M={}) difference {:?}",
                d, m, target
            );
        }
    }
}

#[test]
fn frobenius_minimizer_is_stationary_under_perturbations() {
    let mut rng = ChaCha8Rng::seed_from_u64(48);
    let band = Bandwidth::new(1, 4).unwrap();
    let sampling = random_points(&mut rng, 1, 10);
    let options = DcfOptions::default();
    let (w_star, report) =
        weights_frobenius(&sampling, band, FrobeniusMode::Dense, &options).unwrap();
    assert!(report.converged);
    let f_star =
        frobenius_objective(&w_star, &sampling, band, ObjectiveMode::Expansion, &options).unwrap();

    let eta = 1e-3;
    for _ in 0..100 {
        let perturbed: Vec<Complex64> = w_star
            .values()
            .iter()
            .map(|&w| {
                w + eta * Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            })
            .collect();
        let wp = WeightVector::new(&sampling, WeightScheme::Frobenius, perturbed, false).unwrap();
        let f =
            frobenius_objective(&wp, &sampling, band, ObjectiveMode::Expansion, &options).unwrap();
        assert!(
            f >= f_star - 1e-9,
            "objective decreased: {} < {}",
            f,
            f_star
        );
    }
}

#[test]
fn objective_modes_agree_on_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(49);
    for (d, m, n) in [(1usize, 4usize, 7usize), (2, 4, 5)] {
        let band = Bandwidth::new(d, m).unwrap();
        let sampling = random_points(&mut rng, d, n);
        let w = WeightVector::new(
            &sampling,
            WeightScheme::Uniform,
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
            false,
        )
        .unwrap();
        let options = DcfOptions::default();
        let explicit =
            frobenius_objective(&w, &sampling, band, ObjectiveMode::Explicit, &options).unwrap();
        let expansion =
            frobenius_objective(&w, &sampling, band, ObjectiveMode::Expansion, &options).unwrap();
        assert!(
            (explicit - expansion).abs() <= 1e-9 * explicit.max(1.0),
            "(d={}, M={}): {} vs {}",
            d,
            m,
            explicit,
            expansion
        );
    }
}

#[test]
fn sinc_ls_matches_columnwise_pseudo_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let band = Bandwidth::new(1, 4).unwrap();
    let sampling = random_points(&mut rng, 1, 7);
    let w = weights_sinc_ls(&sampling, band).unwrap();
    let c = sinc_matrix(&sampling, band).unwrap();
    for j in 0..7 {
        // pseudo-inverse of the single column [C]_j applied to e_j:
        // ([C]_jᵀ[C]_j)⁻¹ [C]_jᵀ e_j = C_jj / ‖[C]_j‖²
        let col_norm_sq: f64 = (0..7).map(|s| c[(s, j)] * c[(s, j)]).sum();
        let expect = c[(j, j)] / col_norm_sq / band.cardinality() as f64;
        assert!(
            (w.values()[j].re - expect).abs() < 1e-12,
            "j = {}: {} vs {}",
            j,
            w.values()[j].re,
            expect
        );
    }
}

#[test]
fn quadrature_residual_matches_brute_force_sum() {
    let band = Bandwidth::new(1, 2).unwrap();
    let sampling = SamplingSet::new(1, vec![0.11, -0.27, 0.38]).unwrap();
    let w = uniform_weights(&sampling, band).unwrap();
    let r = quadrature_residual(&w, &sampling, band, &DcfOptions::default()).unwrap();

    let mut max_abs = 0.0f64;
    let mut l2 = 0.0f64;
    let mut at_zero = 0.0f64;
    for k in -2i64..2 {
        let mut sum = Complex64::new(0.0, 0.0);
        for (j, p) in sampling.iter_points().enumerate() {
            sum += w.values()[j] * Complex64::from_polar(1.0, 2.0 * PI * k as f64 * p[0]);
        }
        if k == 0 {
            sum -= 1.0;
            at_zero = sum.norm();
        }
        max_abs = max_abs.max(sum.norm());
        l2 += sum.norm_sqr();
    }
    assert!((r.max_abs - max_abs).abs() < 1e-14);
    assert!((r.l2 - l2.sqrt()).abs() < 1e-14);
    assert!((r.at_zero_error - at_zero).abs() < 1e-14);
}

/// A max-abs quadrature residual of ε over I_2M bounds every pairwise sum
/// deviation over I_M × I_M, because every frequency difference lands in I_2M.
#[test]
fn quadrature_bound_transfers_to_pairwise_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let band = Bandwidth::new(1, 4).unwrap();
    let sampling = jittered_1d(&mut rng, 20);
    let options = DcfOptions::default();
    let (w, _) = weights_second_kind(&sampling, band, &options).unwrap();
    let r = quadrature_residual(&w, &sampling, band, &options).unwrap();

    for l in -2i64..2 {
        for k in -2i64..2 {
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, p) in sampling.iter_points().enumerate() {
                let phase = 2.0 * PI * (l - k) as f64 * p[0];
                sum += w.values()[j] * Complex64::from_polar(1.0, phase);
            }
            if l == k {
                sum -= 1.0;
            }
            assert!(
                sum.norm() <= r.max_abs + 1e-14,
                "pair ({}, {}): {:.3e} > {:.3e}",
                l,
                k,
                sum.norm(),
                r.max_abs
            );
        }
    }
}

#[test]
fn schemes_agree_between_direct_and_fast_transforms() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let band = Bandwidth::new(1, 16).unwrap();
    let sampling = jittered_1d(&mut rng, 80);
    let direct = DcfOptions {
        transform: TransformMode::Direct,
        ..DcfOptions::default()
    };
    let fast = DcfOptions {
        transform: TransformMode::Fast,
        ..DcfOptions::default()
    };
    let (wd, _) = weights_second_kind(&sampling, band, &direct).unwrap();
    let (wf, _) = weights_second_kind(&sampling, band, &fast).unwrap();
    let diff: f64 = wd
        .values()
        .iter()
        .zip(wf.values())
        .map(|(&a, &b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
        / norm(wd.values());
    assert!(diff < 1e-8, "direct vs fast weights differ by {:.3e}", diff);
}
