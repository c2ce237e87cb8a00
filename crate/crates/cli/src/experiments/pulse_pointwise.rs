//! Pointwise reconstruction study for the triangular pulse: weights from each
//! scheme are applied to samples of the periodized pulse (artificial) and of
//! the plain pulse (real), and the coefficient-space error maps are written
//! as images.

use super::{
    build_grid, compute_scheme, dcf_options, ensure_out_dir, write_manifest, write_residuals_csv,
    write_scheme_weights, SchemeRun,
};
use crate::config::{SampleKind, Settings};
use infft_core::error::Result;
use infft_core::fourier::SpectralVector;
use infft_core::io::{format_float, write_pgm16};
use infft_core::signals::{
    periodized_samples, pointwise_error_image, reconstruct, relative_error, TriangularPulse,
};
use std::fs;

pub struct PulseCaseResult {
    pub samples: SampleKind,
    pub relative_error: f64,
    pub reconstruction: SpectralVector,
}

pub struct PulseSchemeResult {
    pub run: SchemeRun,
    pub cases: Vec<PulseCaseResult>,
}

pub struct PulseOutcome {
    pub n: usize,
    pub truth: SpectralVector,
    pub results: Vec<PulseSchemeResult>,
}

impl PulseOutcome {
    pub fn error_of(&self, scheme: infft_core::dcf::WeightScheme, kind: SampleKind) -> Option<f64> {
        self.results
            .iter()
            .find(|r| r.run.scheme == scheme)
            .and_then(|r| r.cases.iter().find(|c| c.samples == kind))
            .map(|c| c.relative_error)
    }
}

pub fn compute(settings: &Settings) -> Result<PulseOutcome> {
    let band = infft_core::fourier::Bandwidth::new(2, settings.degree)?;
    let pulse = TriangularPulse::new(band, settings.halfwidth)?;
    let truth = pulse.spectrum_on_band();
    let sampling = build_grid(settings)?;
    let options = dcf_options(settings);

    let kinds: Vec<SampleKind> = match settings.samples {
        Some(k) => vec![k],
        None => vec![SampleKind::Artificial, SampleKind::Real],
    };
    let artificial = periodized_samples(&truth, &sampling)?;
    let real = pulse.samples_exact(&sampling)?;

    let mut results = Vec::new();
    for &scheme in &settings.schemes {
        let run = compute_scheme(scheme, &sampling, band, &options)?;
        let mut cases = Vec::new();
        for &kind in &kinds {
            let samples = match kind {
                SampleKind::Artificial => &artificial,
                SampleKind::Real => &real,
            };
            let reconstruction =
                reconstruct(samples, &run.weights, &sampling, band, options.transform)?;
            let relative_error = relative_error(&reconstruction, &truth)?;
            cases.push(PulseCaseResult {
                samples: kind,
                relative_error,
                reconstruction,
            });
        }
        results.push(PulseSchemeResult { run, cases });
    }
    Ok(PulseOutcome {
        n: sampling.len(),
        truth,
        results,
    })
}

pub fn run(settings: &Settings) -> Result<PulseOutcome> {
    let outcome = compute(settings)?;
    ensure_out_dir(settings)?;
    let dir = &settings.out;
    let m = settings.degree;
    let mut outputs = Vec::new();
    let mut result_lines = vec![format!("N = {}", outcome.n)];

    let mut errors_csv = String::from("scheme,samples,relative_error\n");
    for result in &outcome.results {
        let label = result.run.scheme.label();
        for case in &result.cases {
            let error_map = pointwise_error_image(&case.reconstruction, &outcome.truth)?;
            let name = format!("err_{}_{}.pgm", label, case.samples.label());
            write_pgm16(&dir.join(&name), m, m, &error_map)?;
            outputs.push(name);
            errors_csv.push_str(&format!(
                "{},{},{}\n",
                label,
                case.samples.label(),
                format_float(case.relative_error)
            ));
            result_lines.push(format!(
                "relative_error[{}][{}] = {}",
                label,
                case.samples.label(),
                format_float(case.relative_error)
            ));
        }
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
