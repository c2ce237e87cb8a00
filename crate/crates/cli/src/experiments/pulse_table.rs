//! Error table for the triangular pulse on logarithmic modified polar grids
//! of growing size, printed next to the reference values for the same setup.

use super::{compute_scheme, dcf_options};
use crate::config::Settings;
use infft_core::dcf::WeightScheme;
use infft_core::error::Result;
use infft_core::grids::{generate, GridKind, GridSpec};
use infft_core::io::format_float;
use infft_core::signals::{reconstruct, relative_error, TriangularPulse};
use std::fs;

/// Radial sizes of the table rows; the angular count is `2R`.
pub const TABLE_RADIAL_SIZES: [usize; 8] = [40, 48, 56, 64, 72, 80, 88, 96];

/// Reference values for this setup: `(R, N, second_kind, frobenius, sinc_ls)`
/// relative errors, reconstructing from real samples.
pub const REFERENCE_ROWS: [(usize, usize, f64, f64, f64); 8] = [
    (40, 3565, 4.4908e-1, 1.7608e-1, 2.0475e-1),
    (48, 5145, 1.0886e-1, 2.0690e-2, 1.5829e-1),
    (56, 7149, 3.6632e-2, 8.0215e-3, 1.5401e-1),
    (64, 9429, 2.5109e-2, 4.7988e-3, 1.8337e-1),
    (72, 11965, 7.6871e-3, 4.1096e-3, 2.0633e-1),
    (80, 14909, 5.5991e-3, 3.8507e-3, 2.1932e-1),
    (88, 18153, 3.8889e-3, 3.9853e-3, 2.2665e-1),
    (96, 21589, 4.2240e-3, 3.7917e-3, 2.3092e-1),
];

pub struct TableRow {
    pub radial: usize,
    pub n: usize,
    /// Relative reconstruction error per requested scheme, in scheme order.
    pub errors: Vec<(WeightScheme, f64)>,
}

impl TableRow {
    pub fn error_of(&self, scheme: WeightScheme) -> Option<f64> {
        self.errors
            .iter()
            .find(|(s, _)| *s == scheme)
            .map(|&(_, e)| e)
    }
}

pub struct TableOutcome {
    pub rows: Vec<TableRow>,
    /// Rows that failed, with the radial size and the error message.
    pub failures: Vec<(usize, String)>,
}

/// Computes one table row: grid of size `R` with `T = 2R`, weights for every
/// requested scheme, reconstruction from real (non-periodized) samples.
pub fn compute_row(settings: &Settings, radial: usize) -> Result<TableRow> {
    let band = infft_core::fourier::Bandwidth::new(2, settings.degree)?;
    let pulse = TriangularPulse::new(band, settings.halfwidth)?;
    let truth = pulse.spectrum_on_band();
    let mut spec = GridSpec::new(GridKind::LogModifiedPolar, radial);
    spec.log_ratio = settings.log_ratio;
    let sampling = generate(&spec)?;
    let options = dcf_options(settings);
    let samples = pulse.samples_exact(&sampling)?;

    let mut errors = Vec::new();
    for &scheme in &settings.schemes {
        let run = compute_scheme(scheme, &sampling, band, &options)?;
        let recon = reconstruct(&samples, &run.weights, &sampling, band, options.transform)?;
        errors.push((scheme, relative_error(&recon, &truth)?));
    }
    Ok(TableRow {
        radial,
        n: sampling.len(),
        errors,
    })
}

pub fn compute(settings: &Settings) -> TableOutcome {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &radial in &TABLE_RADIAL_SIZES {
        match compute_row(settings, radial) {
            Ok(row) => rows.push(row),
            Err(e) => failures.push((radial, e.to_string())),
        }
    }
    TableOutcome { rows, failures }
}

fn reference_for(radial: usize) -> Option<&'static (usize, usize, f64, f64, f64)> {
    REFERENCE_ROWS.iter().find(|row| row.0 == radial)
}

/// Formats the table for stdout: computed values beside the reference ones.
pub fn render(outcome: &TableOutcome, settings: &Settings) -> String {
    let mut text = String::new();
    text.push_str(&format!(
        "triangular pulse, M = {}, b = {}, log modified polar grids (T = 2R)\n",
        settings.degree, settings.halfwidth
    ));
    text.push_str(
        "   R      N  second_kind   frobenius    sinc_ls  |  ref N  ref second   ref frob   ref sinc\n",
    );
    for row in &outcome.rows {
        let cell = |scheme| match row.error_of(scheme) {
            Some(e) => format!("{:11.4e}", e),
            None => format!("{:>11}", "-"),
        };
        text.push_str(&format!(
            "{:4} {:6}  {} {} {}",
            row.radial,
            row.n,
            cell(WeightScheme::SecondKind),
            cell(WeightScheme::Frobenius),
            cell(WeightScheme::SincLs),
        ));
        match reference_for(row.radial) {
            Some(&(_, n, e8, e11, e21)) => text.push_str(&format!(
                "  | {:6}  {:10.4e} {:10.4e} {:10.4e}\n",
                n, e8, e11, e21
            )),
            None => text.push_str("  |      -           -          -          -\n"),
        }
    }
    for (radial, message) in &outcome.failures {
        text.push_str(&format!("R = {}: failed: {}\n", radial, message));
    }
    text
}

pub fn run(settings: &Settings) -> Result<TableOutcome> {
    let outcome = compute(settings);
    super::ensure_out_dir(settings)?;
    let dir = &settings.out;

    let mut csv = String::from(
        "R,N,second_kind,frobenius,sinc_ls,ref_N,ref_second_kind,ref_frobenius,ref_sinc_ls\n",
    );
    for row in &outcome.rows {
        let cell = |scheme| match row.error_of(scheme) {
            Some(e) => format_float(e),
            None => "-".to_string(),
        };
        let (rn, r8, r11, r21) = match reference_for(row.radial) {
            Some(&(_, n, e8, e11, e21)) => (
                n.to_string(),
                format_float(e8),
                format_float(e11),
                format_float(e21),
            ),
            None => ("-".into(), "-".into(), "-".into(), "-".into()),
        };
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            row.radial,
            row.n,
            cell(WeightScheme::SecondKind),
            cell(WeightScheme::Frobenius),
            cell(WeightScheme::SincLs),
            rn,
            r8,
            r11,
            r21,
        ));
    }
    fs::write(dir.join("table.csv"), csv)?;

    let mut outputs = vec!["table.csv".into(), "manifest.txt".into()];
    let mut result_lines: Vec<String> = outcome
        .rows
        .iter()
        .map(|row| {
            let errs: Vec<String> = row
                .errors
                .iter()
                .map(|(s, e)| format!("{}={}", s.label(), format_float(*e)))
                .collect();
            format!("R={} N={} {}", row.radial, row.n, errs.join(" "))
        })
        .collect();
    for (radial, message) in &outcome.failures {
        result_lines.push(format!("R={} failed: {}", radial, message));
    }
    outputs.sort();
    super::write_manifest(dir, settings, &outputs, &result_lines)?;
    Ok(outcome)
}
