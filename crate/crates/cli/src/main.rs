//! Batch front end: evaluates sharing bounds, runs the two decoherence
//! models, audits the inequality by Monte-Carlo sampling and executes the
//! verification suites. Every run is deterministic given its full argument
//! set; data files land in `--out-dir` with a manifest alongside.

mod commands;
mod config;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit codes: 0 success, 1 failed verification assertion,
/// 2 invalid arguments, 3 resource limits exceeded.
pub const EXIT_ASSERTION: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "spinbath", version, about = "Entanglement sharing in symmetric spin baths")]
struct Cli {
    /// Directory for data files and manifests.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    /// Optional flat JSON config; explicit flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the sharing bound (give --tau-b) or its inverse (--tau-sb).
    Bound(BoundArgs),
    /// Dephasing model: closed-form decoherence factor and tangles over a
    /// time grid, optionally cross-checked against the state-vector oracle.
    Zurek(ZurekArgs),
    /// Self-interacting thermal bath model: Rabi-oscillation trajectories
    /// for a list of intra-bath couplings, with a summary of the sweep.
    Tw(TwArgs),
    /// Monte-Carlo audit of the sharing inequality over symmetric states.
    Sample(SampleArgs),
    /// Run the named verification suites and report every assertion.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Number of bath spins.
    #[arg(long)]
    n: Option<usize>,
    /// Pairwise intra-bath tangle; yields the bound on the system-bath tangle.
    #[arg(long, conflicts_with = "tau_sb")]
    tau_b: Option<f64>,
    /// System-bath tangle; yields the largest compatible intra-bath tangle.
    #[arg(long)]
    tau_sb: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BathMode {
    Product,
    Entangled,
}

#[derive(Debug, Args)]
struct ZurekArgs {
    /// Initial bath state family.
    #[arg(long, value_enum)]
    mode: Option<BathMode>,
    /// Number of bath spins.
    #[arg(long)]
    n: Option<usize>,
    /// Dephasing coupling strength.
    #[arg(long)]
    g: Option<f64>,
    /// Entangled-bath branch amplitude a (d = sqrt(1 - a^2)).
    #[arg(long)]
    a: Option<f64>,
    /// Product-bath spin-down amplitude alpha (beta = sqrt(1 - alpha^2)).
    #[arg(long)]
    alpha: Option<f64>,
    /// Central-spin down amplitude chi (gamma = sqrt(1 - chi^2)).
    #[arg(long)]
    chi: Option<f64>,
    /// Grid end time; defaults to one period pi/g.
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of grid points.
    #[arg(long)]
    steps: Option<usize>,
    /// Also run the full state-vector simulation and emit its columns.
    #[arg(long)]
    exact_check: bool,
}

#[derive(Debug, Args)]
struct TwArgs {
    /// Number of bath spins.
    #[arg(long)]
    n: Option<usize>,
    /// Intra-bath couplings to sweep (repeatable).
    #[arg(long = "lambda")]
    lambdas: Vec<f64>,
    /// Bath temperature: positive number, 0 (ground state) or inf.
    #[arg(long)]
    kt: Option<String>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Central-spin splitting.
    #[arg(long)]
    omega0: Option<f64>,
    /// Bath-spin splitting.
    #[arg(long)]
    omega_i: Option<f64>,
    /// Transverse field.
    #[arg(long)]
    beta: Option<f64>,
    /// System-bath coupling.
    #[arg(long)]
    lambda0: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnsembleArg {
    Symmetric,
    Singlet,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Number of bath spins (2..=8).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Violation tolerance on the margin.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Worker threads; default from SPINBATH_WORKERS, then all cores.
    #[arg(long)]
    workers: Option<usize>,
    /// Also emit the per-bin empirical frontier.
    #[arg(long)]
    frontier: bool,
    /// Sampling ensemble (singlet is the N = 2 supplementary check).
    #[arg(long, value_enum)]
    ensemble: Option<EnsembleArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Ckw,
    Lagrange,
    ZurekOracle,
    TwSanity,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match config::ConfigFile::load(cli.config.as_deref()) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let outcome = match &cli.command {
        Command::Bound(args) => commands::bound(args, &config),
        Command::Zurek(args) => commands::zurek(args, &config, &cli.out_dir),
        Command::Tw(args) => commands::tw(args, &config, &cli.out_dir),
        Command::Sample(args) => commands::sample(args, &config, &cli.out_dir),
        Command::Verify(args) => commands::verify(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let resource_limited = err.chain().any(|e| {
                matches!(
                    e.downcast_ref::<spinbath_core::Error>(),
                    Some(spinbath_core::Error::RegisterTooLarge { .. })
                )
            });
            ExitCode::from(if resource_limited { EXIT_RESOURCE } else { EXIT_INVALID })
        }
    }
}
