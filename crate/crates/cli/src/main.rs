//! `hopf-galois`: checks graded algebras described in JSON, generates
//! descriptors for the standard families, and runs corpus suites.

mod check;
mod error;
mod generate;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};


#[derive(Debug, Parser)]
#[command(name = "hopf-galois", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Outcome a `check` run is expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    /// Every check passes.
    Pass,
    /// Strong grading and the Galois property both fail; everything else passes.
    NotStrong,
    /// Quantum commutativity fails; everything else passes.
    NotQc,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Caps {
    /// Largest grading group order to process.
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_group_order: u64,
    /// Largest n accepted for the iterated canonical map.
    #[arg(long, default_value_t = hopf_galois::galois::DEFAULT_MAX_BETA_N, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_beta_n: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every applicable check on one descriptor.
    Check {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Expect::Pass)]
        expect: Expect,
        /// n for the iterated canonical map check.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        beta_n: u32,
        #[command(flatten)]
        caps: Caps,
        #[arg(long)]
        verbose: bool,
    },
    /// Write the descriptor of a standard algebra.
    Generate {
        #[command(subcommand)]
        builder: generate::Builder,
        /// Output path; stdout when absent.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Compare strong grading and the Galois property over a directory.
    Suite {
        dir: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            file,
            report,
            expect,
            beta_n,
            caps,
            verbose,
        } => check::run(&file, report.as_deref(), expect, beta_n, &caps, verbose),
        Command::Generate { builder, output } => generate::run(&builder, output.as_deref()),
        Command::Suite {
            dir,
            report,
            caps,
            verbose,
        } => suite::run(&dir, report.as_deref(), &caps, verbose),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
