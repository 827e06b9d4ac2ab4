//! Command-line driver: evaluate the closed-form constants, run verification
//! campaigns against the numerical oracles, run simulations, and merge the
//! resulting reports.
//!
//! Exit codes: 0 when everything passes, 1 on a verification failure, 2 on a
//! usage or configuration error.

mod campaign;
mod report;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "tailasym", version, about = "Tail asymptotics of products of risks, verified against numerical oracles")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the closed-form constant bundle as JSON.
    Constants(ConstantsArgs),
    /// Run a verification campaign: one CSV + JSON report per case.
    Verify(RunArgs),
    /// Run a simulation file: sample CSVs + summary JSON per entry.
    Simulate(RunArgs),
    /// Merge the verification CSVs in a directory into one table.
    Report(ReportArgs),
}

#[derive(Args)]
struct ConstantsArgs {
    /// Compute the supremum-over-random-interval constants instead of the
    /// product bundle.
    #[arg(long)]
    sup_interval: bool,
    #[arg(long)]
    p1: Option<f64>,
    #[arg(long = "L1")]
    l1: Option<f64>,
    #[arg(long)]
    p2: Option<f64>,
    #[arg(long = "L2")]
    l2: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long = "L")]
    l: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long = "C")]
    c: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    /// Campaign or simulation JSON file.
    file: PathBuf,
    /// Directory for the output reports.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Root seed; overrides the seed in the file. When neither is present a
    /// seed is drawn from entropy and recorded in the summaries.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Outputs are byte-identical for
    /// any worker count.
    #[arg(long)]
    workers: Option<usize>,
    /// Fallback tolerance for cases that do not set one.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct ReportArgs {
    /// Directory holding the case CSVs.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Name of the merged table written into the same directory.
    #[arg(long, default_value = "merged.csv")]
    output: String,
}

/// Outcome of a campaign/simulation run.
pub(crate) enum RunOutcome {
    AllPass,
    SomeFailed,
}

fn run_constants(args: &ConstantsArgs) -> Result<String, String> {
    if args.sup_interval {
        let (p, l, alpha, c) = match (args.p, args.l, args.alpha, args.c) {
            (Some(p), Some(l), Some(alpha), Some(c)) => (p, l, alpha, c),
            _ => return Err("--sup-interval needs --p, --L, --alpha and --C".into()),
        };
        let k = tailasym::asymptotics::sup_interval_constants(p, l, alpha, c)
            .map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&k).expect("serializable"))
    } else {
        let (p1, l1, p2, l2) = match (args.p1, args.l1, args.p2, args.l2) {
            (Some(p1), Some(l1), Some(p2), Some(l2)) => (p1, l1, p2, l2),
            _ => return Err("product constants need --p1, --L1, --p2 and --L2".into()),
        };
        let k = tailasym::asymptotics::product_constants(p1, l1, p2, l2)
            .map_err(|e| e.to_string())?;
        Ok(serde_json::to_string(&k).expect("serializable"))
    }
}

fn build_pool(workers: Option<usize>) -> Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err("--workers must be at least 1".into());
        }
        b = b.num_threads(w);
    }
    b.build().map_err(|e| format!("building worker pool: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Constants(args) => match run_constants(args) {
            Ok(json) => {
                println!("{json}");
                return ExitCode::SUCCESS;
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        Cmd::Verify(args) => {
            let pool = match build_pool(args.workers) {
                Ok(p) => p,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            };
            pool.install(|| campaign::run(args))
        }
        Cmd::Simulate(args) => {
            let pool = match build_pool(args.workers) {
                Ok(p) => p,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            };
            pool.install(|| simulate::run(args))
        }
        Cmd::Report(args) => report::run(args),
    };
    match outcome {
        Ok(RunOutcome::AllPass) => ExitCode::SUCCESS,
        Ok(RunOutcome::SomeFailed) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Per-entry seed derivation from the root seed (splitmix64 step).
pub(crate) fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Root seed: flag > file > entropy.
pub(crate) fn resolve_seed(flag: Option<u64>, file: Option<u64>) -> u64 {
    flag.or(file).unwrap_or_else(rand::random)
}
