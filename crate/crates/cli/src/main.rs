//! Command-line driver for the density compensation experiments.

use clap::{Args, Parser, Subcommand};
use infft_dcf::config::{Experiment, Overrides, Settings};
use infft_dcf::experiments::{phantom, pulse_pointwise, pulse_table, weights_only};
use infft_core::io::format_float;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "infft-dcf",
    about = "Density compensation factors for nonequispaced Fourier inversion",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shepp-Logan coefficients on a spiral grid, one reconstruction per scheme
    #[command(name = "phantom")]
    Phantom(CommonArgs),
    /// Triangular pulse on a modified polar grid, error maps for real and artificial samples
    #[command(name = "pulse_pointwise")]
    PulsePointwise(CommonArgs),
    /// Triangular pulse error table over growing logarithmic grids
    #[command(name = "pulse_table")]
    PulseTable(CommonArgs),
    /// Weights for a trajectory read from CSV
    #[command(name = "weights_only")]
    WeightsOnly(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key = value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Polynomial degree M (even)
    #[arg(long = "M")]
    degree: Option<usize>,
    /// Grid kind: spiral, polar, modified_polar, log_modified_polar, equispaced, jittered
    #[arg(long)]
    grid: Option<String>,
    /// Radial count R
    #[arg(long = "R")]
    radial: Option<usize>,
    /// Angular count T
    #[arg(long = "T")]
    angular: Option<usize>,
    /// Comma-separated schemes: second_kind, first_kind, frobenius, sinc_ls, uniform
    #[arg(long)]
    scheme: Option<String>,
    /// Sample kind: real or artificial (default: both where applicable)
    #[arg(long)]
    samples: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Force exact direct transforms instead of automatic routing
    #[arg(long = "exact-transform")]
    exact_transform: bool,
    /// Trajectory CSV (weights_only)
    #[arg(long)]
    trajectory: Option<PathBuf>,
}

impl CommonArgs {
    fn resolve(&self, experiment: Experiment) -> Result<Settings, String> {
        let mut settings = Settings::defaults(experiment);
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
            settings
                .apply_config(&text)
                .map_err(|e| format!("{}: {}", path.display(), e))?;
        }
        let overrides = Overrides {
            degree: self.degree,
            grid: self.grid.clone(),
            radial: self.radial,
            angular: self.angular,
            scheme: self.scheme.clone(),
            samples: self.samples.clone(),
            out: self.out.clone(),
            exact_transform: self.exact_transform,
            trajectory: self.trajectory.clone(),
        };
        settings
            .apply_overrides(&overrides)
            .map_err(|e| e.to_string())?;
        Ok(settings)
    }
}

fn execute(command: &Command) -> Result<(), String> {
    match command {
        Command::Phantom(args) => {
            let settings = args.resolve(Experiment::Phantom)?;
            let outcome = phantom::run(&settings).map_err(|e| e.to_string())?;
            println!(
                "phantom: M = {}, N = {}, outputs in {}",
                settings.degree,
                outcome.n,
                settings.out.display()
            );
            for result in &outcome.results {
                println!(
                    "  {:12} relative_error = {}",
                    result.run.scheme.label(),
                    format_float(result.relative_error)
                );
            }
        }
        Command::PulsePointwise(args) => {
            let settings = args.resolve(Experiment::PulsePointwise)?;
            let outcome = pulse_pointwise::run(&settings).map_err(|e| e.to_string())?;
            println!(
                "pulse_pointwise: M = {}, b = {}, N = {}, outputs in {}",
                settings.degree,
                settings.halfwidth,
                outcome.n,
                settings.out.display()
            );
            for result in &outcome.results {
                for case in &result.cases {
                    println!(
                        "  {:12} {:10} relative_error = {}",
                        result.run.scheme.label(),
                        case.samples.label(),
                        format_float(case.relative_error)
                    );
                }
            }
        }
        Command::PulseTable(args) => {
            let settings = args.resolve(Experiment::PulseTable)?;
            let outcome = pulse_table::run(&settings).map_err(|e| e.to_string())?;
            print!("{}", pulse_table::render(&outcome, &settings));
            println!("outputs in {}", settings.out.display());
            if !outcome.failures.is_empty() {
                return Err(format!("{} table rows failed", outcome.failures.len()));
            }
        }
        Command::WeightsOnly(args) => {
            let settings = args.resolve(Experiment::WeightsOnly)?;
            let outcome = weights_only::run(&settings).map_err(|e| e.to_string())?;
            println!(
                "weights_only: M = {}, d = {}, N = {}, outputs in {}",
                settings.degree,
                outcome.dimension,
                outcome.n,
                settings.out.display()
            );
            for run in &outcome.runs {
                println!(
                    "  {:12} quadrature_max_abs = {}",
                    run.scheme.label(),
                    format_float(run.quadrature.max_abs)
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::FAILURE
        }
    }
}
