//! File formats used by the experiments: CSV with full-precision floats,
//! 16-bit PGM images with min/max sidecars, and the trajectory and weight
//! interchange files.

use crate::dcf::{WeightScheme, WeightVector};
use crate::error::{Error, Result};
use crate::fourier::SamplingSet;
use num_complex::Complex64;
use std::fs;
use std::path::Path;

/// Formats a float with 17 significant digits so that parsing the text
/// recovers the exact bit pattern.
pub fn format_float(x: f64) -> String {
    format!("{:.16e}", x)
}

fn parse_float(text: &str, line: usize, what: &str) -> Result<f64> {
    text.trim().parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a number for {}, got {:?}", what, text.trim()),
    })
}

/// Writes a 16-bit big-endian PGM. Values are mapped linearly from
/// `[min, max]` onto `[0, 65535]`; a constant image maps to all zeros. A
/// sidecar text file (same path with extension `txt`) records the min and max
/// so the scaling is invertible. Returns `(min, max)`.
pub fn write_pgm16(path: &Path, width: usize, height: usize, data: &[f64]) -> Result<(f64, f64)> {
    if data.len() != width * height {
        return Err(Error::Dimension {
            what: "image data",
            expected: width * height,
            got: data.len(),
        });
    }
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("image value is NaN or infinite".into()));
    }
    let min = data.iter().copied().fold(f64::INFINITY, f64::min);
    let max = data.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let mut bytes = format!("P5\n{} {}\n65535\n", width, height).into_bytes();
    for &v in data {
        let level = if span == 0.0 {
            0u16
        } else {
            ((v - min) / span * 65535.0).round() as u16
        };
        bytes.extend_from_slice(&level.to_be_bytes());
    }
    fs::write(path, bytes)?;
    let sidecar = path.with_extension("txt");
    fs::write(
        sidecar,
        format!("min={}\nmax={}\n", format_float(min), format_float(max)),
    )?;
    Ok((min, max))
}

/// Writes sampling points as CSV with header `x1[,x2,...]`.
pub fn write_trajectory_csv(path: &Path, sampling: &SamplingSet) -> Result<()> {
    let d = sampling.dimension();
    let header: Vec<String> = (1..=d).map(|a| format!("x{}", a)).collect();
    let mut out = header.join(",");
    out.push('\n');
    for p in sampling.iter_points() {
        let row: Vec<String> = p.iter().map(|&c| format_float(c)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a trajectory CSV written by [`write_trajectory_csv`] (or by hand).
/// The header determines the dimension; coordinates are canonicalized into
/// `[−1/2, 1/2)` on construction.
pub fn read_trajectory_csv(path: &Path) -> Result<SamplingSet> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty trajectory file".into(),
    })?;
    let columns: Vec<&str> = header.trim().split(',').map(str::trim).collect();
    let d = columns.len();
    let expected: Vec<String> = (1..=d).map(|a| format!("x{}", a)).collect();
    if columns != expected.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "trajectory header must be {:?}, got {:?}",
                expected.join(","),
                header.trim()
            ),
        });
    }
    let mut coords = Vec::new();
    for (i, row) in lines {
        let line = i + 1;
        if row.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != d {
            return Err(Error::Parse {
                line,
                message: format!("expected {} coordinates, got {}", d, fields.len()),
            });
        }
        for f in fields {
            coords.push(parse_float(f, line, "coordinate")?);
        }
    }
    if coords.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "trajectory file contains no points".into(),
        });
    }
    SamplingSet::new(d, coords)
}

/// Weights read back from a CSV, with the metadata from its header line.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightsFile {
    pub scheme: WeightScheme,
    pub degree: usize,
    pub dimension: usize,
    pub len: usize,
    pub residual_max_abs: f64,
    pub values: Vec<Complex64>,
}

/// Writes weights as CSV: a `#` metadata line, a `j,re,im` header, then one
/// row per point with 1-based indices.
pub fn write_weights_csv(
    path: &Path,
    weights: &WeightVector,
    degree: usize,
    dimension: usize,
    residual_max_abs: f64,
) -> Result<()> {
    let mut out = format!(
        "# scheme={} M={} d={} N={} residual_max_abs={}\n",
        weights.scheme().label(),
        degree,
        dimension,
        weights.len(),
        format_float(residual_max_abs),
    );
    out.push_str("j,re,im\n");
    for (j, w) in weights.values().iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            j + 1,
            format_float(w.re),
            format_float(w.im)
        ));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads a weights CSV written by [`write_weights_csv`].
pub fn read_weights_csv(path: &Path) -> Result<WeightsFile> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, meta) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty weights file".into(),
    })?;
    let meta = meta.strip_prefix('#').ok_or(Error::Parse {
        line: 1,
        message: "weights file must start with a # metadata line".into(),
    })?;
    let mut scheme = None;
    let mut degree = None;
    let mut dimension = None;
    let mut len = None;
    let mut residual = None;
    for field in meta.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("malformed metadata field {:?}", field),
        })?;
        match key {
            "scheme" => {
                scheme = Some(WeightScheme::parse(value).ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("unknown scheme {:?}", value),
                })?)
            }
            "M" => degree = value.parse::<usize>().ok(),
            "d" => dimension = value.parse::<usize>().ok(),
            "N" => len = value.parse::<usize>().ok(),
            "residual_max_abs" => residual = Some(parse_float(value, 1, "residual_max_abs")?),
            other => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("unknown metadata key {:?}", other),
                })
            }
        }
    }
    let missing = |what: &str| Error::Parse {
        line: 1,
        message: format!("metadata line is missing {}", what),
    };
    let scheme = scheme.ok_or_else(|| missing("scheme"))?;
    let degree = degree.ok_or_else(|| missing("M"))?;
    let dimension = dimension.ok_or_else(|| missing("d"))?;
    let len = len.ok_or_else(|| missing("N"))?;
    let residual_max_abs = residual.ok_or_else(|| missing("residual_max_abs"))?;

    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 2,
        message: "missing j,re,im header".into(),
    })?;
    if header.trim() != "j,re,im" {
        return Err(Error::Parse {
            line: 2,
            message: format!("expected header j,re,im, got {:?}", header.trim()),
        });
    }
    let mut values = Vec::with_capacity(len);
    for (i, row) in lines {
        let line = i + 1;
        if row.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let j = fields[0].trim().parse::<usize>().map_err(|_| Error::Parse {
            line,
            message: format!("bad row index {:?}", fields[0]),
        })?;
        if j != values.len() + 1 {
            return Err(Error::Parse {
                line,
                message: format!("row index {} out of order, expected {}", j, values.len() + 1),
            });
        }
        let re = parse_float(fields[1], line, "re")?;
        let im = parse_float(fields[2], line, "im")?;
        values.push(Complex64::new(re, im));
    }
    if values.len() != len {
        return Err(Error::Parse {
            line: 1,
            message: format!("metadata claims N={} but file has {} rows", len, values.len()),
        });
    }
    Ok(WeightsFile {
        scheme,
        degree,
        dimension,
        len,
        residual_max_abs,
        values,
    })
}
