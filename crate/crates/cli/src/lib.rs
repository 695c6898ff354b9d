//! Command-line front end for `sobolev-core`.
//!
//! Four subcommands share one JSON configuration (see [`config::RunConfig`]):
//!
//! * `spectra`: coefficients of a seeded random, constant or file-supplied function,
//! * `norms`: `S_p`, `H^s`, `L^2` and sup norms of a coefficient file,
//! * `constants`: embedding constants with summability verdicts,
//! * `verify`: the inequality suite, with a JSON and CSV report.
//!
//! Values are taken from command-line flags first, then from the
//! configuration, then from the bundled defaults. Exit codes: 0 success,
//! 1 verification failure, 2 usage or configuration error.

// `!(x >= y)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod config;
pub mod formats;
pub mod output;

use config::{Format, RunConfig, CONFIG_ENV};

/// Exit code for a passing run.
pub const EXIT_OK: u8 = 0;
/// Exit code when a verification record fails.
pub const EXIT_FAILED: u8 = 1;
/// Exit code for usage, configuration and input errors.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Library(#[from] sobolev_core::Error),
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sobolev",
    version,
    about = "Fourier transforms, Sobolev norms and embedding checks on compact groups"
)]
pub struct Cli {
    /// JSON configuration file (default: the bundled configuration).
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    /// Master seed, overriding the configuration.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory, overriding the configuration.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format for tables and reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Print nothing on success.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Seeded Gaussian coefficients on the whole window.
    Random,
    /// The constant function `x -> (1, 2, ..., m)`.
    Constant,
    /// The coefficient file given by `--input`.
    File,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the Fourier coefficients of a function and print its S_2 norm.
    Spectra {
        /// Only this group (by name, e.g. `su2(L=4)`); default all configured groups.
        #[arg(long)]
        group: Option<String>,
        #[arg(long, value_enum, default_value = "random")]
        source: Source,
        /// Coefficient file for `--source file`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Norm table of a coefficient file.
    Norms {
        /// Coefficient file; its group must appear in the configuration.
        #[arg(long)]
        input: PathBuf,
    },
    /// Embedding constants and summability verdicts.
    Constants,
    /// Run the inequality suite; exit 1 if any record fails.
    Verify {
        /// Functions per group, overriding the configuration.
        #[arg(long)]
        batch_size: Option<usize>,
        /// Harness self-test: multiply every right-hand side by this factor.
        #[arg(long)]
        tamper: Option<f64>,
    },
}

/// Settings after applying flag > config > default precedence.
#[derive(Debug)]
pub struct Context {
    pub config: RunConfig,
    pub out_dir: PathBuf,
    pub format: Format,
    pub quiet: bool,
}

impl Context {
    pub fn new(cli: &Cli) -> Result<Self, CliError> {
        let mut config = RunConfig::load(cli.config.as_deref())?;
        if let Some(seed) = cli.seed {
            config.seed = seed;
        }
        let out_dir = cli
            .out
            .clone()
            .or_else(|| config.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("sobolev-out"));
        let format = cli.format.or(config.format).unwrap_or(Format::Both);
        Ok(Context {
            config,
            out_dir,
            format,
            quiet: cli.quiet,
        })
    }

    pub(crate) fn say(&self, line: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", line.as_ref());
        }
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let result = Context::new(&cli).and_then(|ctx| match &cli.command {
        Command::Spectra {
            group,
            source,
            input,
        } => commands::spectra(&ctx, group.as_deref(), *source, input.as_deref()).map(|_| true),
        Command::Norms { input } => commands::norms(&ctx, input).map(|_| true),
        Command::Constants => commands::constants(&ctx).map(|_| true),
        Command::Verify { batch_size, tamper } => commands::verify(&ctx, *batch_size, *tamper),
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
