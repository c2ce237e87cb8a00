//! Flat `key = value` configuration files and the resolved settings for each
//! experiment. Settings resolve in three layers: experiment defaults, then
//! the config file, then command-line overrides.

use infft_core::dcf::WeightScheme;
use infft_core::error::{Error, Result};
use infft_core::grids::{GridKind, DEFAULT_LOG_RATIO};
use std::fmt;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Phantom,
    PulsePointwise,
    PulseTable,
    WeightsOnly,
}

impl Experiment {
    pub fn label(&self) -> &'static str {
        match self {
            Experiment::Phantom => "phantom",
            Experiment::PulsePointwise => "pulse_pointwise",
            Experiment::PulseTable => "pulse_table",
            Experiment::WeightsOnly => "weights_only",
        }
    }
}

/// Which samples feed the reconstruction: values of the underlying signal or
/// of its periodization (the band-limited model the weights are exact for).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Real,
    Artificial,
}

impl SampleKind {
    pub fn label(&self) -> &'static str {
        match self {
            SampleKind::Real => "real",
            SampleKind::Artificial => "artificial",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub experiment: Experiment,
    pub degree: usize,
    pub grid: GridKind,
    pub radial: usize,
    pub angular: usize,
    pub halfwidth: usize,
    pub schemes: Vec<WeightScheme>,
    /// `None` runs every kind the experiment defines.
    pub samples: Option<SampleKind>,
    pub out: PathBuf,
    pub exact_transform: bool,
    pub seed: u64,
    pub jitter: f64,
    pub log_ratio: f64,
    pub trajectory: Option<PathBuf>,
}

/// Command-line overrides, applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub degree: Option<usize>,
    pub grid: Option<String>,
    pub radial: Option<usize>,
    pub angular: Option<usize>,
    pub scheme: Option<String>,
    pub samples: Option<String>,
    pub out: Option<PathBuf>,
    pub exact_transform: bool,
    pub trajectory: Option<PathBuf>,
}

impl Settings {
    pub fn defaults(experiment: Experiment) -> Self {
        let base = Settings {
            experiment,
            degree: 64,
            grid: GridKind::Spiral,
            radial: 64,
            angular: 128,
            halfwidth: 24,
            schemes: vec![
                WeightScheme::SecondKind,
                WeightScheme::FirstKind,
                WeightScheme::Frobenius,
            ],
            samples: None,
            out: PathBuf::from(format!("out_{}", experiment.label())),
            exact_transform: false,
            seed: 0,
            jitter: 0.3,
            log_ratio: DEFAULT_LOG_RATIO,
            trajectory: None,
        };
        match experiment {
            Experiment::Phantom => base,
            Experiment::PulsePointwise => Settings {
                degree: 32,
                halfwidth: 12,
                grid: GridKind::ModifiedPolar,
                schemes: vec![
                    WeightScheme::SecondKind,
                    WeightScheme::Frobenius,
                    WeightScheme::SincLs,
                ],
                ..base
            },
            Experiment::PulseTable => Settings {
                grid: GridKind::LogModifiedPolar,
                schemes: vec![
                    WeightScheme::SecondKind,
                    WeightScheme::Frobenius,
                    WeightScheme::SincLs,
                ],
                ..base
            },
            Experiment::WeightsOnly => Settings {
                schemes: vec![WeightScheme::SecondKind],
                ..base
            },
        }
    }

    /// Applies a config file's entries, rejecting unknown keys and malformed
    /// values with their line numbers.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for entry in parse_config(text)? {
            self.apply_entry(&entry.key, &entry.value, entry.line)?;
        }
        Ok(())
    }

    fn apply_entry(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let bad = |what: &str| Error::Parse {
            line,
            message: format!("invalid value {:?} for {}", value, what),
        };
        match key {
            "M" => self.degree = value.parse().map_err(|_| bad("M"))?,
            "grid" => self.grid = parse_grid(value).ok_or_else(|| bad("grid"))?,
            "R" => self.radial = value.parse().map_err(|_| bad("R"))?,
            "T" => self.angular = value.parse().map_err(|_| bad("T"))?,
            "b" => self.halfwidth = value.parse().map_err(|_| bad("b"))?,
            "scheme" => self.schemes = parse_schemes(value).ok_or_else(|| bad("scheme"))?,
            "samples" => self.samples = Some(parse_samples(value).ok_or_else(|| bad("samples"))?),
            "out" => self.out = PathBuf::from(value),
            "exact_transform" => {
                self.exact_transform = value.parse().map_err(|_| bad("exact_transform"))?
            }
            "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
            "jitter" => self.jitter = value.parse().map_err(|_| bad("jitter"))?,
            "log_ratio" => self.log_ratio = value.parse().map_err(|_| bad("log_ratio"))?,
            "trajectory" => self.trajectory = Some(PathBuf::from(value)),
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown key {:?}", other),
                })
            }
        }
        Ok(())
    }

    /// Applies command-line overrides. Errors carry line 0 to mark them as
    /// coming from the command line rather than the file.
    pub fn apply_overrides(&mut self, ov: &Overrides) -> Result<()> {
        if let Some(m) = ov.degree {
            self.degree = m;
        }
        if let Some(g) = &ov.grid {
            self.apply_entry("grid", g, 0)?;
        }
        if let Some(r) = ov.radial {
            self.radial = r;
        }
        if let Some(t) = ov.angular {
            self.angular = t;
        }
        if let Some(s) = &ov.scheme {
            self.apply_entry("scheme", s, 0)?;
        }
        if let Some(s) = &ov.samples {
            self.apply_entry("samples", s, 0)?;
        }
        if let Some(o) = &ov.out {
            self.out = o.clone();
        }
        if ov.exact_transform {
            self.exact_transform = true;
        }
        if let Some(t) = &ov.trajectory {
            self.trajectory = Some(t.clone());
        }
        Ok(())
    }
}

impl fmt::Display for Settings {
    /// The resolved configuration in the same flat format the parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "experiment = {}", self.experiment.label())?;
        writeln!(f, "M = {}", self.degree)?;
        writeln!(f, "grid = {}", self.grid.label())?;
        writeln!(f, "R = {}", self.radial)?;
        writeln!(f, "T = {}", self.angular)?;
        writeln!(f, "b = {}", self.halfwidth)?;
        let schemes: Vec<&str> = self.schemes.iter().map(|s| s.label()).collect();
        writeln!(f, "scheme = {}", schemes.join(","))?;
        if let Some(s) = self.samples {
            writeln!(f, "samples = {}", s.label())?;
        }
        writeln!(f, "out = {}", self.out.display())?;
        writeln!(f, "exact_transform = {}", self.exact_transform)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "jitter = {}", self.jitter)?;
        writeln!(f, "log_ratio = {}", self.log_ratio)?;
        if let Some(t) = &self.trajectory {
            writeln!(f, "trajectory = {}", t.display())?;
        }
        Ok(())
    }
}

pub struct ConfigEntry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// Parses `key = value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<ConfigEntry>> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stripped = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected key = value, got {:?}", trimmed),
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse {
                line,
                message: format!("expected key = value, got {:?}", trimmed),
            });
        }
        entries.push(ConfigEntry {
            key: key.to_string(),
            value: value.to_string(),
            line,
        });
    }
    Ok(entries)
}

fn parse_grid(value: &str) -> Option<GridKind> {
    GridKind::parse(value)
}

fn parse_schemes(value: &str) -> Option<Vec<WeightScheme>> {
    let mut out = Vec::new();
    for part in value.split(',') {
        out.push(WeightScheme::parse(part.trim())?);
    }
    if out.is_empty() {
        None
    } else {
        Some(out)
    }
}

fn parse_samples(value: &str) -> Option<SampleKind> {
    match value {
        "real" => Some(SampleKind::Real),
        "artificial" => Some(SampleKind::Artificial),
        _ => None,
    }
}
