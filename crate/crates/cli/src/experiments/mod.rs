//! The four experiment drivers. Each has a `compute` entry point returning
//! plain data (used by the binary and by the acceptance tests) and a `run`
//! entry point that also writes the output files.

pub mod phantom;
pub mod pulse_pointwise;
pub mod pulse_table;
pub mod weights_only;

use crate::config::Settings;
use infft_core::dcf::{
    quadrature_residual, uniform_weights, weights_first_kind, weights_frobenius,
    weights_second_kind, weights_sinc_ls, DcfOptions, FrobeniusMode, QuadratureResidual,
    TransformMode, WeightScheme, WeightVector,
};
use infft_core::error::{Error, Result};
use infft_core::fourier::{Bandwidth, SamplingSet};
use infft_core::grids::{generate, GridKind, GridSpec};
use infft_core::io::{format_float, write_weights_csv};
use infft_core::solver::SolveReport;
use std::fs;
use std::path::Path;

/// Weights for one scheme together with the solver and quadrature diagnostics.
pub struct SchemeRun {
    pub scheme: WeightScheme,
    pub weights: WeightVector,
    /// Present for the iterative and dense-solve schemes, absent for the
    /// closed-form ones.
    pub report: Option<SolveReport>,
    pub quadrature: QuadratureResidual,
}

pub fn dcf_options(settings: &Settings) -> DcfOptions {
    let mut options = DcfOptions::default();
    if settings.exact_transform {
        options.transform = TransformMode::Direct;
    }
    options
}

/// Computes the weights for one scheme and attaches the quadrature residual.
pub fn compute_scheme(
    scheme: WeightScheme,
    sampling: &SamplingSet,
    band: Bandwidth,
    options: &DcfOptions,
) -> Result<SchemeRun> {
    let (weights, report) = match scheme {
        WeightScheme::SecondKind => {
            let (w, r) = weights_second_kind(sampling, band, options)?;
            (w, Some(r))
        }
        WeightScheme::FirstKind => {
            let (w, r) = weights_first_kind(sampling, band, options)?;
            (w, Some(r))
        }
        WeightScheme::Frobenius => {
            let (w, r) = weights_frobenius(sampling, band, FrobeniusMode::MatrixFree, options)?;
            (w, Some(r))
        }
        WeightScheme::SincLs => (weights_sinc_ls(sampling, band)?, None),
        WeightScheme::Uniform => (uniform_weights(sampling, band)?, None),
    };
    let quadrature = quadrature_residual(&weights, sampling, band, options)?;
    Ok(SchemeRun {
        scheme,
        weights,
        report,
        quadrature,
    })
}

/// Builds the sampling set the settings describe.
pub fn build_grid(settings: &Settings) -> Result<SamplingSet> {
    let mut spec = GridSpec::new(settings.grid, settings.radial).with_t(settings.angular);
    spec.seed = settings.seed;
    spec.jitter = settings.jitter;
    spec.log_ratio = settings.log_ratio;
    generate(&spec)
}

pub fn grid_kind_uses_angular(kind: GridKind) -> bool {
    !matches!(kind, GridKind::Equispaced | GridKind::Jittered)
}

/// One row of `residuals.csv`. Solver fields are `-` for closed-form schemes.
pub fn residual_csv_row(run: &SchemeRun) -> String {
    let (iterations, converged, final_res) = match &run.report {
        Some(r) => (
            r.iterations.to_string(),
            r.converged.to_string(),
            format_float(r.final_relative_residual),
        ),
        None => ("-".into(), "-".into(), "-".into()),
    };
    format!(
        "{},{},{},{},{},{},{}",
        run.scheme.label(),
        iterations,
        converged,
        final_res,
        format_float(run.quadrature.max_abs),
        format_float(run.quadrature.l2),
        format_float(run.quadrature.at_zero_error),
    )
}

pub const RESIDUALS_HEADER: &str =
    "scheme,iterations,converged,final_relative_residual,quadrature_max_abs,quadrature_l2,quadrature_at_zero\n";

pub fn write_residuals_csv(dir: &Path, runs: &[&SchemeRun]) -> Result<()> {
    let mut out = String::from(RESIDUALS_HEADER);
    for run in runs {
        out.push_str(&residual_csv_row(run));
        out.push('\n');
    }
    fs::write(dir.join("residuals.csv"), out)?;
    Ok(())
}

pub fn write_scheme_weights(
    dir: &Path,
    runs: &[&SchemeRun],
    degree: usize,
    dimension: usize,
) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for run in runs {
        let name = format!("weights_{}.csv", run.scheme.label());
        write_weights_csv(
            &dir.join(&name),
            &run.weights,
            degree,
            dimension,
            run.quadrature.max_abs,
        )?;
        names.push(name);
    }
    Ok(names)
}

/// Writes `manifest.txt`: the resolved configuration, the files produced, and
/// the headline numbers.
pub fn write_manifest(
    dir: &Path,
    settings: &Settings,
    outputs: &[String],
    results: &[String],
) -> Result<()> {
    let mut text = String::from("# resolved configuration\n");
    text.push_str(&settings.to_string());
    text.push_str("\n# outputs\n");
    for name in outputs {
        text.push_str(name);
        text.push('\n');
    }
    text.push_str("\n# results\n");
    for line in results {
        text.push_str(line);
        text.push('\n');
    }
    fs::write(dir.join("manifest.txt"), text)?;
    Ok(())
}

pub fn ensure_out_dir(settings: &Settings) -> Result<()> {
    fs::create_dir_all(&settings.out).map_err(Error::from)
}
