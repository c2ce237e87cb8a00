//! Weight computation for an externally supplied trajectory: reads a
//! coordinate CSV, computes the requested schemes, writes the weights and
//! their diagnostics.

use super::{compute_scheme, dcf_options, ensure_out_dir, write_manifest, write_residuals_csv,
    write_scheme_weights, SchemeRun};
use crate::config::Settings;
use infft_core::error::{Error, Result};
use infft_core::fourier::Bandwidth;
use infft_core::io::{format_float, read_trajectory_csv};

pub struct WeightsOnlyOutcome {
    pub n: usize,
    pub dimension: usize,
    pub runs: Vec<SchemeRun>,
}

pub fn compute(settings: &Settings) -> Result<WeightsOnlyOutcome> {
    let path = settings.trajectory.as_ref().ok_or_else(|| {
        Error::InvalidParameter(
            "weights_only needs a trajectory file (key trajectory, or --trajectory)".into(),
        )
    })?;
    let sampling = read_trajectory_csv(path)?;
    let band = Bandwidth::new(sampling.dimension(), settings.degree)?;
    let options = dcf_options(settings);
    let mut runs = Vec::new();
    for &scheme in &settings.schemes {
        runs.push(compute_scheme(scheme, &sampling, band, &options)?);
    }
    Ok(WeightsOnlyOutcome {
        n: sampling.len(),
        dimension: sampling.dimension(),
        runs,
    })
}

pub fn run(settings: &Settings) -> Result<WeightsOnlyOutcome> {
    let outcome = compute(settings)?;
    ensure_out_dir(settings)?;
    let dir = &settings.out;
    let runs: Vec<&SchemeRun> = outcome.runs.iter().collect();

    let mut outputs = write_scheme_weights(dir, &runs, settings.degree, outcome.dimension)?;
    write_residuals_csv(dir, &runs)?;
    outputs.push("residuals.csv".into());
    outputs.push("manifest.txt".into());

    let result_lines: Vec<String> = std::iter::once(format!(
        "N = {}, d = {}",
        outcome.n, outcome.dimension
    ))
    .chain(outcome.runs.iter().map(|run| {
        format!(
            "quadrature_max_abs[{}] = {}",
            run.scheme.label(),
            format_float(run.quadrature.max_abs)
        )
    }))
    .collect();
    write_manifest(dir, settings, &outputs, &result_lines)?;
    Ok(outcome)
}
