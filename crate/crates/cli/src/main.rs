//! `cutjump`: reconstruct the jump of a function across its cut from its Taylor
//! coefficients, and generate or diagnose the data for it.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod error;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cutjump_core::transform::Geometry;

use crate::commands::*;
use crate::error::CliResult;
use crate::files::{DegreeRange, GridSpec};

#[derive(Debug, Parser)]
#[command(name = "cutjump", version, about = "Jump reconstruction from Taylor coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the coefficients of a built-in test pair.
    Forward {
        /// power-law, exponential or log-power
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        /// Last coefficient index.
        #[arg(short = 'N', long = "num-coeffs", default_value_t = 64)]
        num_coeffs: usize,
        /// Use Mellin quadrature instead of the closed form.
        #[arg(long)]
        quadrature: bool,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reconstruct the jump function from a coefficient file (CSV output).
    Reconstruct {
        input: PathBuf,
        #[arg(short = 'M', long = "degree", default_value_t = 16)]
        degree: usize,
        /// Use only coefficients 0..=N.
        #[arg(short = 'N', long = "num-coeffs")]
        num_coeffs: Option<usize>,
        #[arg(long, default_value = "x")]
        geometry: Geometry,
        /// min:max:count
        #[arg(long)]
        grid: Option<GridSpec>,
        /// Run the moment check in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Relative L2 error against a reference pair over a range of degrees.
    Sweep {
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree or lo:hi range.
        #[arg(short = 'M', long = "degree", default_value = "2:40")]
        degree: DegreeRange,
        #[arg(short = 'N', long = "num-coeffs")]
        num_coeffs: Option<usize>,
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value = "x")]
        geometry: Geometry,
        #[arg(long)]
        grid: Option<GridSpec>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Moment statistics of a coefficient file (JSON on stdout).
    CheckHausdorff {
        input: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Norm, Plancherel, bound and coefficient-route diagnostics (JSON on stdout).
    Diagnose {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        pair: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long = "sigma", allow_negative_numbers = true, default_values_t = [-0.5, 0.0, 0.5, 1.0])]
        sigma: Vec<f64>,
        #[arg(short = 'M', long = "degree", default_value_t = 16)]
        degree: usize,
        #[arg(short = 'N', long = "num-coeffs", default_value_t = 64)]
        num_coeffs: usize,
        #[arg(long)]
        exact: bool,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Forward {
            pair,
            beta,
            num_coeffs,
            quadrature,
            noise,
            seed,
            output,
        } => forward(&ForwardArgs {
            pair,
            beta,
            last_index: num_coeffs,
            quadrature,
            noise,
            seed,
            output,
        }),
        Command::Reconstruct {
            input,
            degree,
            num_coeffs,
            geometry,
            grid,
            exact,
            output,
        } => reconstruct_cmd(&ReconstructArgs {
            input,
            degree,
            last_index: num_coeffs,
            geometry,
            grid,
            exact,
            output,
        }),
        Command::Sweep {
            input,
            noise,
            seed,
            degree,
            num_coeffs,
            pair,
            beta,
            geometry,
            grid,
            output,
        } => sweep(&SweepArgs {
            input,
            noise,
            seed,
            degrees: degree,
            last_index: num_coeffs,
            pair,
            beta,
            geometry,
            grid,
            output,
        }),
        Command::CheckHausdorff { input, exact } => check_hausdorff(&input, exact),
        Command::Diagnose {
            input,
            pair,
            beta,
            sigma,
            degree,
            num_coeffs,
            exact,
        } => diagnose(&DiagnoseArgs {
            input,
            pair,
            beta,
            sigmas: sigma,
            degree,
            last_index: num_coeffs,
            exact,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
