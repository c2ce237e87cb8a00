//! Dirichlet and sinc kernels, and the dense matrices built from them.

use crate::error::{Error, Result};
use crate::fourier::{Bandwidth, SamplingSet};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Entry budget for dense kernel matrices.
pub const DEFAULT_DENSE_ENTRY_BUDGET: usize = 1 << 27;

/// `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Product of [`sinc`] over the coordinates.
pub fn sinc_d(x: &[f64]) -> f64 {
    x.iter().map(|&t| sinc(t)).product()
}

/// Closed form for one axis: `Σ_{k=−M/2}^{M/2−1} e^{2πikt} = e^{−πit} sin(Mπt)/sin(πt)`,
/// with the removable singularity at integer `t` replaced by the limit `M`
/// (valid because `M` is even).
fn dirichlet_1d(t: f64, m: usize) -> Complex64 {
    let s = (PI * t).sin();
    if s.abs() < 1e-10 {
        Complex64::new(m as f64, 0.0)
    } else {
        Complex64::from_polar(1.0, -PI * t) * ((m as f64 * PI * t).sin() / s)
    }
}

/// `Σ_{k∈I_M} e^{2πi k·t}`, evaluated as a product of per-axis closed forms.
///
/// Panics if `t.len()` differs from the band dimension.
pub fn dirichlet_kernel(t: &[f64], band: Bandwidth) -> Complex64 {
    assert_eq!(t.len(), band.dimension(), "dirichlet_kernel dimension mismatch");
    t.iter()
        .map(|&ta| dirichlet_1d(ta, band.degree()))
        .product()
}

fn check_dense(entries: u128, budget: usize) -> Result<()> {
    if entries > budget as u128 {
        return Err(Error::TooLarge {
            what: "dense kernel matrix",
            requested: entries,
            budget: budget as u128,
        });
    }
    Ok(())
}

/// The `N×N` matrix with entries `sinc_d(Mπ(x_j − x_s))`. Symmetric with unit
/// diagonal; differences are taken between the stored representatives.
pub fn sinc_matrix(sampling: &SamplingSet, band: Bandwidth) -> Result<DMatrix<f64>> {
    sinc_matrix_budgeted(sampling, band, DEFAULT_DENSE_ENTRY_BUDGET)
}

/// [`sinc_matrix`] with an explicit entry budget.
pub fn sinc_matrix_budgeted(
    sampling: &SamplingSet,
    band: Bandwidth,
    budget: usize,
) -> Result<DMatrix<f64>> {
    if sampling.dimension() != band.dimension() {
        return Err(Error::Dimension {
            what: "sinc matrix dimension",
            expected: band.dimension(),
            got: sampling.dimension(),
        });
    }
    let n = sampling.len();
    check_dense(n as u128 * n as u128, budget)?;
    let m = band.degree() as f64;
    let d = sampling.dimension();
    let mut out = DMatrix::<f64>::zeros(n, n);
    let mut diff = vec![0.0; d];
    for j in 0..n {
        out[(j, j)] = 1.0;
        for s in 0..j {
            let xj = sampling.point(j);
            let xs = sampling.point(s);
            for a in 0..d {
                diff[a] = m * PI * (xj[a] - xs[a]);
            }
            let v = sinc_d(&diff);
            out[(j, s)] = v;
            out[(s, j)] = v;
        }
    }
    Ok(out)
}

/// Finite section of the sinc operator on the node lattice `ℓ/M`, `ℓ ∈ {−L,...,L}^d`:
/// entry `(j, ℓ)` is `sinc_d(Mπ(x_j − ℓ/M))`, columns enumerated lexicographically
/// with the last axis fastest.
pub fn sinc_operator_section(
    sampling: &SamplingSet,
    band: Bandwidth,
    l: usize,
) -> Result<DMatrix<f64>> {
    sinc_operator_section_budgeted(sampling, band, l, DEFAULT_DENSE_ENTRY_BUDGET)
}

/// [`sinc_operator_section`] with an explicit entry budget.
pub fn sinc_operator_section_budgeted(
    sampling: &SamplingSet,
    band: Bandwidth,
    l: usize,
    budget: usize,
) -> Result<DMatrix<f64>> {
    if sampling.dimension() != band.dimension() {
        return Err(Error::Dimension {
            what: "sinc section dimension",
            expected: band.dimension(),
            got: sampling.dimension(),
        });
    }
    let d = sampling.dimension();
    let side = 2 * l + 1;
    let mut cols: usize = 1;
    for _ in 0..d {
        cols = cols
            .checked_mul(side)
            .ok_or_else(|| Error::InvalidParameter(format!("section size {}^{} overflows", side, d)))?;
    }
    let n = sampling.len();
    check_dense(n as u128 * cols as u128, budget)?;
    let m = band.degree() as f64;
    let mut out = DMatrix::<f64>::zeros(n, cols);
    let mut node = vec![0i64; d];
    let mut diff = vec![0.0; d];
    for col in 0..cols {
        let mut rest = col;
        for a in (0..d).rev() {
            node[a] = (rest % side) as i64 - l as i64;
            rest /= side;
        }
        for j in 0..n {
            let xj = sampling.point(j);
            for a in 0..d {
                diff[a] = m * PI * (xj[a] - node[a] as f64 / m);
            }
            out[(j, col)] = sinc_d(&diff);
        }
    }
    Ok(out)
}
