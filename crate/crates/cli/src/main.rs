//! Command-line front end: reproduces the published coefficient tables,
//! runs the verification battery over a configured system, and scans
//! product-profile geometries into CSV reports.

mod geometry;
mod tables;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kacflow::jacobi::ExpansionMode;

/// Exit code for verification failures and focal points inside a scan.
const EXIT_FAILURE: u8 = 1;
/// Exit code for configuration, usage, and golden-mismatch errors.
const EXIT_CONFIG: u8 = 2;

/// Environment variable that overrides the configured seed.
const SEED_ENV: &str = "KACFLOW_SEED";

#[derive(Parser)]
#[command(
    name = "kacflow",
    version,
    about = "Exact verification of determinant expansions over modified Kac matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the published coefficient tables for the 2 x 2 system.
    Tables(CommonArgs),
    /// Run the verification battery and emit one report per line.
    Verify(CommonArgs),
    /// Scan a product profile described by a key=value file into CSV.
    Geometry(GeometryArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// First factor dimension.
    #[arg(long, default_value_t = 2)]
    n1: usize,
    /// Second factor dimension.
    #[arg(long, default_value_t = 2)]
    n2: usize,
    /// Expansion grading.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Sample budget for determinant checks on systems too large to
    /// expand symbolically.
    #[arg(long = "tau-samples", default_value_t = 20)]
    tau_samples: usize,
    /// Seed for generating matrices; KACFLOW_SEED overrides it.
    #[arg(long, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Total dimension cap for fully symbolic expansion.
    #[arg(long = "symbolic-cap", default_value_t = 7)]
    symbolic_cap: usize,
    /// Write output to this path instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format; each command has its natural default.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Record wall-clock durations in reports instead of zeros.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GeometryArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Path to the scan description (keys: eps1, eps2, n1, n2, base1,
    /// base2, phi_a, s_min, s_max, steps).
    spec: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Mixed,
    Flat,
}

impl From<ModeArg> for ExpansionMode {
    fn from(mode: ModeArg) -> ExpansionMode {
        match mode {
            ModeArg::Mixed => ExpansionMode::Mixed,
            ModeArg::Flat => ExpansionMode::Flat,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

/// Fully resolved run configuration shared by the subcommands.
struct RunConfig {
    n1: usize,
    n2: usize,
    mode: Option<ExpansionMode>,
    tau_samples: usize,
    seed: u64,
    symbolic_cap: usize,
    output_path: Option<PathBuf>,
    format: Option<FormatArg>,
    timings: bool,
}

impl RunConfig {
    /// Resolves arguments and the seed override; a set but unparseable
    /// override is a configuration error.
    fn resolve(args: &CommonArgs) -> Result<RunConfig, String> {
        let seed = match std::env::var(SEED_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<u64>()
                .map_err(|_| format!("{SEED_ENV} must be an unsigned integer, got {raw:?}"))?,
            Err(_) => args.seed,
        };
        Ok(RunConfig {
            n1: args.n1,
            n2: args.n2,
            mode: args.mode.map(ExpansionMode::from),
            tau_samples: args.tau_samples,
            seed,
            symbolic_cap: args.symbolic_cap,
            output_path: args.output.clone(),
            format: args.format,
            timings: args.timings,
        })
    }

    /// Writes the rendered output to the configured path, or to standard
    /// output when no path is set.
    fn emit(&self, text: &str) -> io::Result<()> {
        match &self.output_path {
            Some(path) => fs::write(path, text),
            None => io::stdout().write_all(text.as_bytes()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Tables(args) => with_config(args, tables::run),
        Command::Verify(args) => with_config(args, verify::run),
        Command::Geometry(args) => {
            with_config(&args.common, |config| geometry::run(config, &args.spec))
        }
    };
    ExitCode::from(code)
}

fn with_config(args: &CommonArgs, run: impl FnOnce(&RunConfig) -> u8) -> u8 {
    match RunConfig::resolve(args) {
        Ok(config) => run(&config),
        Err(message) => {
            eprintln!("kacflow: {message}");
            EXIT_CONFIG
        }
    }
}
