//! Phantom reconstruction: the Shepp-Logan pixels act as Fourier
//! coefficients, samples of the resulting trigonometric polynomial are taken
//! on the grid, and each scheme's weighted adjoint is compared against the
//! original coefficients.

use super::{
    build_grid, compute_scheme, dcf_options, ensure_out_dir, write_manifest, write_residuals_csv,
    write_scheme_weights, SchemeRun,
};
use crate::config::Settings;
use infft_core::error::Result;
use infft_core::fourier::SpectralVector;
use infft_core::io::{format_float, write_pgm16};
use infft_core::signals::{
    periodized_samples, pointwise_error_image, reconstruct, relative_error, shepp_logan,
};
use std::fs;

pub struct PhantomSchemeResult {
    pub run: SchemeRun,
    pub relative_error: f64,
    pub reconstruction: SpectralVector,
}

pub struct PhantomOutcome {
    pub n: usize,
    pub truth: SpectralVector,
    pub results: Vec<PhantomSchemeResult>,
}

pub fn compute(settings: &Settings) -> Result<PhantomOutcome> {
    let image = shepp_logan(settings.degree)?;
    let truth = image.to_spectrum();
    let band = image.band();
    let sampling = build_grid(settings)?;
    let options = dcf_options(settings);
    let samples = periodized_samples(&truth, &sampling)?;

    let mut results = Vec::new();
    for &scheme in &settings.schemes {
        let run = compute_scheme(scheme, &sampling, band, &options)?;
        let reconstruction = reconstruct(&samples, &run.weights, &sampling, band, options.transform)?;
        let relative_error = relative_error(&reconstruction, &truth)?;
        results.push(PhantomSchemeResult {
            run,
            relative_error,
            reconstruction,
        });
    }
    Ok(PhantomOutcome {
        n: sampling.len(),
        truth,
        results,
    })
}

/// The 1-based row the experiment singles out for the profile comparison.
pub const PROFILE_ROW: usize = 52;

pub fn run(settings: &Settings) -> Result<PhantomOutcome> {
    let outcome = compute(settings)?;
    ensure_out_dir(settings)?;
    let dir = &settings.out;
    let m = settings.degree;
    let mut outputs = Vec::new();
    let mut result_lines = vec![format!("N = {}", outcome.n)];

    // the reference image for comparison
    let truth_pixels: Vec<f64> = outcome.truth.values().iter().map(|z| z.re).collect();
    write_pgm16(&dir.join("reference.pgm"), m, m, &truth_pixels)?;
    outputs.push("reference.pgm".into());

    let mut errors_csv = String::from("scheme,relative_error\n");
    for result in &outcome.results {
        let label = result.run.scheme.label();
        let recon_pixels: Vec<f64> = result
            .reconstruction
            .values()
            .iter()
            .map(|z| z.re)
            .collect();
        let name = format!("recon_{}.pgm", label);
        write_pgm16(&dir.join(&name), m, m, &recon_pixels)?;
        outputs.push(name);

        // images smaller than the profile row fall back to their middle row
        let profile_row = if m >= PROFILE_ROW { PROFILE_ROW } else { m / 2 };
        let row = profile_row - 1;
        let mut row_csv = String::from("col,reference,reconstruction\n");
        for col in 0..m {
            row_csv.push_str(&format!(
                "{},{},{}\n",
                col + 1,
                format_float(truth_pixels[row * m + col]),
                format_float(recon_pixels[row * m + col]),
            ));
        }
        let name = format!("row{}_{}.csv", profile_row, label);
        fs::write(dir.join(&name), row_csv)?;
        outputs.push(name);

        let error_map = pointwise_error_image(&result.reconstruction, &outcome.truth)?;
        let name = format!("err_{}.pgm", label);
        write_pgm16(&dir.join(&name), m, m, &error_map)?;
        outputs.push(name);

        errors_csv.push_str(&format!(
            "{},{}\n",
            label,
            format_float(result.relative_error)
        ));
        result_lines.push(format!(
            "relative_error[{}] = {}",
            label,
            format_float(result.relative_error)
        ));
    }
    fs::write(dir.join("errors.csv"), errors_csv)?;
    outputs.push("errors.csv".into());

    let runs: Vec<&SchemeRun> = outcome.results.iter().map(|r| &r.run).collect();
    write_residuals_csv(dir, &runs)?;
    outputs.push("residuals.csv".into());
    let mut weight_files = write_scheme_weights(dir, &runs, m, 2)?;
    outputs.append(&mut weight_files);

    outputs.push("manifest.txt".into());
    write_manifest(dir, settings, &outputs, &result_lines)?;
    Ok(outcome)
}
