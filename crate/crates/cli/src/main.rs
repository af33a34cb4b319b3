//! `cocycle` — decay tables, growth tables, divergence tables, and
//! verification reports for proper affine actions on discrete groups.
//!
//! Exit codes: 0 success / verification pass, 1 verification failure,
//! 2 usage or parse error, 3 enumeration budget exceeded.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cocycle_core::{Error, Result};

use config::{CommonArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "cocycle",
    version,
    about = "Cocycle decay tables and verification for proper affine actions on discrete groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Per-block norms with upper/lower bounds and the decay envelope
    Norms(NormsArgs),
    /// Run every check and emit a JSON verification report
    Verify(VerifyArgs),
    /// Ball cardinalities and the certified growth constant
    Growth(GrowthArgs),
    /// Side-by-side decay envelopes for several k against the 1/n reference
    Compare(CompareArgs),
    /// Partial sums of the minorizing series at logarithmic checkpoints
    Divergence(DivergenceArgs),
}

#[derive(Args)]
struct NormsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of iterated-log factors
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of iterated-log factors
    #[arg(long)]
    k: Option<u32>,
    /// Corrupt the tent slope to prove the verifier can fail (test builds only)
    #[cfg(debug_assertions)]
    #[arg(long)]
    inject_slope_error: bool,
}

#[derive(Args)]
struct GrowthArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Accepted for flag uniformity; growth tables do not depend on k
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Iterated-log depth; repeatable, e.g. --k 0 --k 1 --k 2
    #[arg(long = "k")]
    k: Vec<u32>,
}

#[derive(Args)]
struct DivergenceArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of iterated-log factors
    #[arg(long)]
    k: Option<u32>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Norms(args) => {
            let ks: Vec<u32> = args.k.into_iter().collect();
            let cfg = RunConfig::resolve(&args.common, &ks, &[1], 6)?;
            emit(commands::norms(&cfg)?, &cfg.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify(args) => {
            let ks: Vec<u32> = args.k.into_iter().collect();
            let cfg = RunConfig::resolve(&args.common, &ks, &[1], 6)?;
            let mut slope_factor = 1.0;
            #[cfg(debug_assertions)]
            if args.inject_slope_error {
                slope_factor = 1.05;
            }
            let (report, passed) = commands::verify(&cfg, slope_factor)?;
            emit(report, &cfg.out)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Growth(args) => {
            let ks: Vec<u32> = args.k.into_iter().collect();
            let cfg = RunConfig::resolve(&args.common, &ks, &[1], 8)?;
            emit(commands::growth(&cfg)?, &cfg.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Compare(args) => {
            let cfg = RunConfig::resolve(&args.common, &args.k, &[0, 1], 6)?;
            emit(commands::compare(&cfg)?, &cfg.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Divergence(args) => {
            let ks: Vec<u32> = args.k.into_iter().collect();
            let cfg = RunConfig::resolve(&args.common, &ks, &[1], 1_000_000)?;
            emit(commands::divergence(&cfg)?, &cfg.out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
