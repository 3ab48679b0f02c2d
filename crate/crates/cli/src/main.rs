//! `nonlocal`: config-driven batch runs of the certified solver.
//!
//! Exit status: 0 success, 1 certificate failure or solver diagnostic,
//! 2 usage or configuration error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "nonlocal",
    version,
    about = "Certified solver for doubly nonlocal reaction-diffusion-transport equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct CommonArgs {
    /// TOML run configuration.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Run even when the certificate fails; the report is marked UNCERTIFIED.
    #[arg(long)]
    pub force: bool,
    /// Output directory (overrides `output.dir`).
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, value_name = "K", default_value_t = 0)]
    pub threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Validate kernels and evaluate the contraction certificate.
    Certify(CommonArgs),
    /// Solve on [0, T] by Picard iteration.
    Solve(CommonArgs),
    /// Solve on [0, T] as a chain of equal windows.
    Global {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of windows (overrides `solver.n_windows`).
        #[arg(long)]
        windows: Option<usize>,
    },
    /// Check the sign condition on J and the norms of G.
    ValidateKernels(CommonArgs),
    /// Norms of the initial condition and of its free evolution.
    Norms(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, windows) = match cli.command {
        Command::Certify(c) => ("certify", c, None),
        Command::Solve(c) => ("solve", c, None),
        Command::Global { common, windows } => ("global", common, windows),
        Command::ValidateKernels(c) => ("validate-kernels", c, None),
        Command::Norms(c) => ("norms", c, None),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build_global()
    {
        eprintln!("error: cannot start thread pool: {e}");
        return ExitCode::from(2);
    }
    let outcome = commands::run(name, &common, windows);
    ExitCode::from(outcome.code())
}
