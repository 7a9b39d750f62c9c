//! `hyptrans`: spectrum, transform values and verification reports for the
//! hypergeometric spectral transform.

mod commands;
mod config;
mod funcspec;
mod points;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyptrans_core::verify::Suite;

use config::{resolve, CommonArgs};
use funcspec::FunctionSpec;

#[derive(Debug, Parser)]
#[command(name = "hyptrans", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Band edges and discrete eigenvalues with their weights.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Transform of a function at a list of eigenvalues.
    Transform {
        #[command(flatten)]
        common: CommonArgs,
        /// jacobi:N, poly:C0,C1,... or kernel:REGION:LAMBDA.
        #[arg(long, default_value = "jacobi:0")]
        function: String,
        /// Comma-separated eigenvalues; defaults to samples of every region.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<f64>,
    },
    /// Runs a verification suite.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// identities, eigen, parseval, mvop, wilson or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

const EXIT_CONFIG: u8 = 2;

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("hyptrans: configuration error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Spectrum { common } => resolve("spectrum", common).map(commands::spectrum),
        Command::Transform { common, function, lambda } => resolve("transform", common).and_then(|cfg| {
            let spec: FunctionSpec = function.parse()?;
            commands::transform(cfg, &spec, lambda)
        }),
        Command::Verify { common, suite } => resolve("verify", common).and_then(|cfg| {
            let s: Suite = suite.parse()?;
            Ok(commands::verify(cfg, s, suite))
        }),
    };
    let report = match outcome {
        Ok(r) => r,
        Err(msg) => return config_error(msg),
    };
    if let Err(e) = report.emit() {
        return config_error(format!("cannot write report: {e}"));
    }
    ExitCode::from(report.exit_code)
}
