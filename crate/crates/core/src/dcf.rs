//! Density compensation weight schemes, the quadrature-exactness residual,
//! and the Frobenius objective.
//!
//! All schemes target the quadrature condition `Σ_j w_j e^{2πi k·x_j} = δ_{0,k}`
//! over the doubled band `I_2M`. The two normal-equation schemes are solved by
//! conjugate gradients with matrix-free operator applications (two transforms
//! per iteration); the Frobenius scheme solves `S w = b` either densely or
//! matrix-free; the sinc scheme is a closed form.

use crate::error::{Error, Result};
use crate::fourier::{
    dirichlet_kernel, ndft_adjoint_budgeted, ndft_forward_budgeted, sinc, Bandwidth, SampleVector,
    SamplingSet, SpectralVector, DEFAULT_WORK_BUDGET,
};
use crate::nfft::{NfftOptions, NfftPlan};
use crate::solver::{cg_solve, dense_solve_real, CgOptions, LinearOperator, SolveReport};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Work estimate (`N·(2M)^d`) below which the doubled-band transforms run by
/// direct summation; larger problems use the fast transform.
pub const DIRECT_TRANSFORM_THRESHOLD: u128 = 1 << 24;

/// How the doubled-band transforms inside the schemes are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransformMode {
    /// Direct summation up to [`DIRECT_TRANSFORM_THRESHOLD`] work, fast beyond.
    #[default]
    Auto,
    /// Always direct summation (exact; quadratic cost).
    Direct,
    /// Always the fast transform.
    Fast,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DcfOptions {
    pub transform: TransformMode,
    pub cg: CgOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    SecondKind,
    FirstKind,
    Frobenius,
    SincLs,
    Uniform,
}

impl WeightScheme {
    pub fn label(&self) -> &'static str {
        match self {
            WeightScheme::SecondKind => "second_kind",
            WeightScheme::FirstKind => "first_kind",
            WeightScheme::Frobenius => "frobenius",
            WeightScheme::SincLs => "sinc_ls",
            WeightScheme::Uniform => "uniform",
        }
    }

    pub fn parse(label: &str) -> Option<WeightScheme> {
        match label {
            "second_kind" => Some(WeightScheme::SecondKind),
            "first_kind" => Some(WeightScheme::FirstKind),
            "frobenius" => Some(WeightScheme::Frobenius),
            "sinc_ls" => Some(WeightScheme::SincLs),
            "uniform" => Some(WeightScheme::Uniform),
            _ => None,
        }
    }
}

/// Density compensation factors for one sampling set.
#[derive(Debug, Clone)]
pub struct WeightVector {
    scheme: WeightScheme,
    values: Vec<Complex64>,
    /// Whether `|I_2M| ≤ N` held when the weights were computed (the regime
    /// in which the quadrature condition can be satisfied exactly).
    exactness_regime: bool,
}

impl WeightVector {
    pub fn new(
        sampling: &SamplingSet,
        scheme: WeightScheme,
        values: Vec<Complex64>,
        exactness_regime: bool,
    ) -> Result<Self> {
        if values.len() != sampling.len() {
            return Err(Error::Dimension {
                what: "weight vector",
                expected: sampling.len(),
                got: values.len(),
            });
        }
        Ok(WeightVector {
            scheme,
            values,
            exactness_regime,
        })
    }

    pub fn scheme(&self) -> WeightScheme {
        self.scheme
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

    /// True when `|I_2M| ≤ N` held at computation time.
    pub fn exactness_regime(&self) -> bool {
        self.exactness_regime
    }
}

/// Deviation from the quadrature condition over `I_2M`.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResidual {
    pub max_abs: f64,
    pub l2: f64,
    /// `|Σ_j w_j − 1|`, the `k = 0` component of the residual.
    pub at_zero_error: f64,
}

/// Forward/adjoint transform pair at a fixed band, resolved once to either
/// direct summation or a fast plan. The weight schemes use it at the doubled
/// band; reconstruction uses it at the original band.
pub(crate) struct BandTransform {
    band: Bandwidth,
    sampling: SamplingSet,
    plan: Option<NfftPlan>,
}

impl BandTransform {
    /// Transform pair at the doubled band of `band`.
    pub fn doubled(sampling: &SamplingSet, band: Bandwidth, mode: TransformMode) -> Result<Self> {
        BandTransform::at_band(sampling, band.doubled()?, mode)
    }

    /// Transform pair at exactly `band`.
    pub fn at_band(sampling: &SamplingSet, band: Bandwidth, mode: TransformMode) -> Result<Self> {
        let work = sampling.len() as u128 * band.cardinality() as u128;
        let use_direct = match mode {
            TransformMode::Direct => {
                if work > DEFAULT_WORK_BUDGET {
                    return Err(Error::TooLarge {
                        what: "exact transform",
                        requested: work,
                        budget: DEFAULT_WORK_BUDGET,
                    });
                }
                true
            }
            TransformMode::Fast => false,
            TransformMode::Auto => work <= DIRECT_TRANSFORM_THRESHOLD,
        };
        let plan = if use_direct {
            None
        } else {
            Some(NfftPlan::new(band, sampling, NfftOptions::default())?)
        };
        Ok(BandTransform {
            band,
            sampling: sampling.clone(),
            plan,
        })
    }

    pub fn forward_raw(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let spectral = SpectralVector::new(self.band, coeffs.to_vec())
            .expect("coefficient length fixed at construction");
        match &self.plan {
            Some(plan) => plan
                .forward(&spectral)
                .expect("plan built for this band")
                .into_values(),
            None => ndft_forward_budgeted(&spectral, &self.sampling, u128::MAX)
                .expect("work bounded at construction")
                .into_values(),
        }
    }

    pub fn adjoint_raw(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let samples = SampleVector::new(&self.sampling, samples.to_vec())
            .expect("sample length fixed at construction");
        match &self.plan {
            Some(plan) => plan
                .adjoint(&samples)
                .expect("plan built for this band")
                .into_values(),
            None => ndft_adjoint_budgeted(&samples, &self.sampling, self.band, u128::MAX)
                .expect("work bounded at construction")
                .into_values(),
        }
    }
}

/// Gram operator `v ↦ A₂ᴴ A₂ v` on the doubled band (dimension `|I_2M|`).
struct GramOperator<'a>(&'a BandTransform);

impl LinearOperator for GramOperator<'_> {
    fn dimension(&self) -> usize {
        self.0.band.cardinality()
    }
    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.0.adjoint_raw(&self.0.forward_raw(x))
    }
}

/// Outer-product operator `z ↦ A₂ A₂ᴴ z` on the samples (dimension `N`).
struct OuterOperator<'a>(&'a BandTransform);

impl LinearOperator for OuterOperator<'_> {
    fn dimension(&self) -> usize {
        self.0.sampling.len()
    }
    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.0.forward_raw(&self.0.adjoint_raw(x))
    }
}

/// Matrix-free application of `S` through `v ↦ A₂ (c ⊙ A₂ᴴ v)`, with `c` the
/// pair counts zero-padded over `I_2M`.
struct PairCountOperator<'a> {
    transform: &'a BandTransform,
    counts: &'a [f64],
}

impl LinearOperator for PairCountOperator<'_> {
    fn dimension(&self) -> usize {
        self.transform.sampling.len()
    }
    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut spectrum = self.transform.adjoint_raw(x);
        for (s, &c) in spectrum.iter_mut().zip(self.counts) {
            *s *= c;
        }
        self.transform.forward_raw(&spectrum)
    }
}

fn exactness_regime(sampling: &SamplingSet, band: Bandwidth) -> Result<bool> {
    Ok(band.doubled()?.cardinality() <= sampling.len())
}

/// Solves the normal equations of second kind: `A₂ᴴ A₂ v = e_0` on the doubled
/// band, then `w = conj(A₂ v)`. In the regime `|I_2M| ≤ N` with a converged
/// solve, the quadrature residual is at the solver tolerance; outside that
/// regime CG stagnates and the best iterate is returned with
/// `converged = false`.
pub fn weights_second_kind(
    sampling: &SamplingSet,
    band: Bandwidth,
    options: &DcfOptions,
) -> Result<(WeightVector, SolveReport)> {
    check_dimensions(sampling, band)?;
    let transform = BandTransform::doubled(sampling, band, options.transform)?;
    let op = GramOperator(&transform);
    let mut rhs = vec![Complex64::new(0.0, 0.0); transform.band.cardinality()];
    let zero_flat = transform
        .band
        .flat_of(&vec![0i64; band.dimension()])
        .expect("zero frequency is always in band");
    rhs[zero_flat] = Complex64::new(1.0, 0.0);

    let (v, report) = cg_solve(&op, &rhs, options.cg)?;
    let w: Vec<Complex64> = transform.forward_raw(&v).iter().map(|z| z.conj()).collect();
    let weights = WeightVector {
        scheme: WeightScheme::SecondKind,
        values: w,
        exactness_regime: exactness_regime(sampling, band)?,
    };
    Ok((weights, report))
}

/// Solves the normal equations of first kind, conjugated into the Hermitian
/// form `A₂ A₂ᴴ z = 1_N` with `w = conj(z)`: the least-squares answer to the
/// quadrature condition in the overdetermined regime.
pub fn weights_first_kind(
    sampling: &SamplingSet,
    band: Bandwidth,
    options: &DcfOptions,
) -> Result<(WeightVector, SolveReport)> {
    check_dimensions(sampling, band)?;
    let transform = BandTransform::doubled(sampling, band, options.transform)?;
    let op = OuterOperator(&transform);
    let rhs = vec![Complex64::new(1.0, 0.0); sampling.len()];
    let (z, report) = cg_solve(&op, &rhs, options.cg)?;
    let weights = WeightVector {
        scheme: WeightScheme::FirstKind,
        values: z.iter().map(|v| v.conj()).collect(),
        exactness_regime: exactness_regime(sampling, band)?,
    };
    Ok((weights, report))
}

/// Pair counts `c_m = Π_a max(M − |m_a|, 0)` for `m ∈ I_2M` in enumeration
/// order: the number of pairs `(k, k′) ∈ I_M²` with `k − k′ = m`.
pub fn pair_counts(band: Bandwidth) -> Result<Vec<f64>> {
    let band2 = band.doubled()?;
    let m = band.degree() as i64;
    let mut counts = Vec::with_capacity(band2.cardinality());
    for idx in band2.indices() {
        let mut c = 1.0;
        for &ma in &idx {
            c *= (m - ma.abs()).max(0) as f64;
        }
        counts.push(c);
    }
    Ok(counts)
}

/// The dense `N×N` system matrix `S` with `S_{j,s} = |Σ_{k∈I_M} e^{2πi k·(x_j−x_s)}|²`,
/// built from the Dirichlet closed form.
pub fn frobenius_matrix_dense(sampling: &SamplingSet, band: Bandwidth) -> Result<DMatrix<f64>> {
    check_dimensions(sampling, band)?;
    let n = sampling.len();
    let entries = n as u128 * n as u128;
    let budget = crate::fourier::DEFAULT_DENSE_ENTRY_BUDGET;
    if entries > budget as u128 {
        return Err(Error::TooLarge {
            what: "dense kernel matrix",
            requested: entries,
            budget: budget as u128,
        });
    }
    let d = sampling.dimension();
    let mut out = DMatrix::<f64>::zeros(n, n);
    let diag = (band.cardinality() as f64).powi(2);
    let mut diff = vec![0.0; d];
    for j in 0..n {
        out[(j, j)] = diag;
        for s in 0..j {
            let xj = sampling.point(j);
            let xs = sampling.point(s);
            for a in 0..d {
                diff[a] = xj[a] - xs[a];
            }
            let v = dirichlet_kernel(&diff, band).norm_sqr();
            out[(j, s)] = v;
            out[(s, j)] = v;
        }
    }
    Ok(out)
}

/// Applies the system matrix `S` to a vector without forming it, through the
/// factorization over pair counts (two doubled-band transforms).
pub fn frobenius_apply(
    sampling: &SamplingSet,
    band: Bandwidth,
    v: &[Complex64],
    options: &DcfOptions,
) -> Result<Vec<Complex64>> {
    check_dimensions(sampling, band)?;
    if v.len() != sampling.len() {
        return Err(Error::Dimension {
            what: "weight vector",
            expected: sampling.len(),
            got: v.len(),
        });
    }
    let transform = BandTransform::doubled(sampling, band, options.transform)?;
    let counts = pair_counts(band)?;
    let op = PairCountOperator {
        transform: &transform,
        counts: &counts,
    };
    Ok(op.apply(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusMode {
    /// Build `S` densely and factorize (requires `N` within the dense budget).
    Dense,
    /// Apply `S` through two fast transforms per CG iteration.
    MatrixFree,
}

/// Minimizes `‖AᴴWA − I‖_F²` over diagonal `W` by solving `S w = |I_M|·1_N`.
pub fn weights_frobenius(
    sampling: &SamplingSet,
    band: Bandwidth,
    mode: FrobeniusMode,
    options: &DcfOptions,
) -> Result<(WeightVector, SolveReport)> {
    check_dimensions(sampling, band)?;
    let n = sampling.len();
    let b = band.cardinality() as f64;
    let regime = exactness_regime(sampling, band)?;
    match mode {
        FrobeniusMode::Dense => {
            let s = frobenius_matrix_dense(sampling, band)?;
            let rhs = vec![b; n];
            let w = dense_solve_real(&s, &rhs)?;
            let residual = {
                let sw = &s * nalgebra::DVector::from_column_slice(&w);
                let num: f64 = sw.iter().map(|v| (v - b) * (v - b)).sum::<f64>().sqrt();
                num / (b * (n as f64).sqrt())
            };
            let weights = WeightVector {
                scheme: WeightScheme::Frobenius,
                values: w.into_iter().map(|v| Complex64::new(v, 0.0)).collect(),
                exactness_regime: regime,
            };
            let report = SolveReport {
                iterations: 0,
                residual_history: vec![residual],
                converged: residual <= 1e-8,
                final_relative_residual: residual,
            };
            Ok((weights, report))
        }
        FrobeniusMode::MatrixFree => {
            let transform = BandTransform::doubled(sampling, band, options.transform)?;
            let counts = pair_counts(band)?;
            let op = PairCountOperator {
                transform: &transform,
                counts: &counts,
            };
            let rhs = vec![Complex64::new(b, 0.0); n];
            let (w, report) = cg_solve(&op, &rhs, options.cg)?;
            let weights = WeightVector {
                scheme: WeightScheme::Frobenius,
                values: w,
                exactness_regime: regime,
            };
            Ok((weights, report))
        }
    }
}

/// Closed-form least-squares weights from the sinc system:
/// `w_j = (1/|I_M|) / Σ_s sinc²_d(Mπ(x_j − x_s))`. Always real, in `(0, 1/|I_M|]`.
pub fn weights_sinc_ls(sampling: &SamplingSet, band: Bandwidth) -> Result<WeightVector> {
    check_dimensions(sampling, band)?;
    let n = sampling.len();
    let d = sampling.dimension();
    let m = band.degree() as f64;
    let card = band.cardinality() as f64;
    let mut values = Vec::with_capacity(n);
    for j in 0..n {
        let xj = sampling.point(j);
        let mut denom = 0.0;
        for s in 0..n {
            let xs = sampling.point(s);
            let mut prod = 1.0;
            for a in 0..d {
                let v = sinc(m * PI * (xj[a] - xs[a]));
                prod *= v * v;
            }
            denom += prod;
        }
        values.push(Complex64::new(1.0 / (card * denom), 0.0));
    }
    Ok(WeightVector {
        scheme: WeightScheme::SincLs,
        values,
        exactness_regime: exactness_regime(sampling, band)?,
    })
}

/// `w_j = 1/N` for every point.
pub fn uniform_weights(sampling: &SamplingSet, band: Bandwidth) -> Result<WeightVector> {
    check_dimensions(sampling, band)?;
    let n = sampling.len();
    Ok(WeightVector {
        scheme: WeightScheme::Uniform,
        values: vec![Complex64::new(1.0 / n as f64, 0.0); n],
        exactness_regime: exactness_regime(sampling, band)?,
    })
}

/// Evaluates `r_k = Σ_j w_j e^{2πi k·x_j} − δ_{0,k}` over every `k ∈ I_2M`
/// (one adjoint transform on the conjugated weights) and reduces it to the
/// max-abs, l2, and `k = 0` components.
pub fn quadrature_residual(
    weights: &WeightVector,
    sampling: &SamplingSet,
    band: Bandwidth,
    options: &DcfOptions,
) -> Result<QuadratureResidual> {
    check_dimensions(sampling, band)?;
    if weights.len() != sampling.len() {
        return Err(Error::Dimension {
            what: "weight vector",
            expected: sampling.len(),
            got: weights.len(),
        });
    }
    let transform = BandTransform::doubled(sampling, band, options.transform)?;
    let conj_w: Vec<Complex64> = weights.values().iter().map(|z| z.conj()).collect();
    let q = transform.adjoint_raw(&conj_w);
    let zero_flat = transform
        .band
        .flat_of(&vec![0i64; band.dimension()])
        .expect("zero frequency is always in band");

    let mut max_abs = 0.0f64;
    let mut l2 = 0.0f64;
    let mut at_zero = 0.0f64;
    for (flat, &qk) in q.iter().enumerate() {
        let mut r = qk.conj();
        if flat == zero_flat {
            r -= 1.0;
            at_zero = r.norm();
        }
        let abs = r.norm();
        max_abs = max_abs.max(abs);
        l2 += abs * abs;
    }
    Ok(QuadratureResidual {
        max_abs,
        l2: l2.sqrt(),
        at_zero_error: at_zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveMode {
    /// Form `AᴴWA − I` explicitly (dense budget applies).
    Explicit,
    /// Expand the norm over frequency differences weighted by pair counts.
    Expansion,
}

/// The exact value of `‖AᴴWA − I‖_F²` for diagonal `W = diag(w)`.
pub fn frobenius_objective(
    weights: &WeightVector,
    sampling: &SamplingSet,
    band: Bandwidth,
    mode: ObjectiveMode,
    options: &DcfOptions,
) -> Result<f64> {
    check_dimensions(sampling, band)?;
    if weights.len() != sampling.len() {
        return Err(Error::Dimension {
            what: "weight vector",
            expected: sampling.len(),
            got: weights.len(),
        });
    }
    match mode {
        ObjectiveMode::Explicit => {
            let n = sampling.len();
            let card = band.cardinality();
            let entries = n as u128 * card as u128 + card as u128 * card as u128;
            let budget = crate::fourier::DEFAULT_DENSE_ENTRY_BUDGET;
            if entries > budget as u128 {
                return Err(Error::TooLarge {
                    what: "dense kernel matrix",
                    requested: entries,
                    budget: budget as u128,
                });
            }
            // rows of A: e^{2πi k·x_j}
            let mut a = DMatrix::<Complex64>::zeros(n, card);
            for (j, p) in sampling.iter_points().enumerate() {
                for (flat, k) in band.indices().enumerate() {
                    let phase: f64 = k
                        .iter()
                        .zip(p)
                        .map(|(&ki, &xi)| ki as f64 * xi)
                        .sum::<f64>()
                        * 2.0
                        * PI;
                    a[(j, flat)] = Complex64::from_polar(1.0, phase);
                }
            }
            let mut wa = a.clone();
            for (j, &w) in weights.values().iter().enumerate() {
                for c in 0..card {
                    wa[(j, c)] *= w;
                }
            }
            let product = a.adjoint() * wa;
            let mut total = 0.0;
            for l in 0..card {
                for k in 0..card {
                    let target = if l == k { 1.0 } else { 0.0 };
                    total += (product[(l, k)] - Complex64::new(target, 0.0)).norm_sqr();
                }
            }
            Ok(total)
        }
        ObjectiveMode::Expansion => {
            let transform = BandTransform::doubled(sampling, band, options.transform)?;
            let counts = pair_counts(band)?;
            let conj_w: Vec<Complex64> = weights.values().iter().map(|z| z.conj()).collect();
            let q = transform.adjoint_raw(&conj_w);
            let zero_flat = transform
                .band
                .flat_of(&vec![0i64; band.dimension()])
                .expect("zero frequency is always in band");
            let mut total = 0.0;
            for (flat, (&qk, &c)) in q.iter().zip(&counts).enumerate() {
                let mut r = qk.conj();
                if flat == zero_flat {
                    r -= 1.0;
                }
                total += c * r.norm_sqr();
            }
            Ok(total)
        }
    }
}

fn check_dimensions(sampling: &SamplingSet, band: Bandwidth) -> Result<()> {
    if sampling.dimension() != band.dimension() {
        return Err(Error::Dimension {
            what: "weights dimension",
            expected: band.dimension(),
            got: sampling.dimension(),
        });
    }
    Ok(())
}
