//! `homlab` command line: run computation scripts, verification suites,
//! counterexample searches, and cross-engine oracle checks.
//!
//! Exit codes: 0 success, 1 usage or computation error, 2 verified
//! counterexample.

mod runner;
mod script;

use clap::{Parser, Subcommand};
use homlab_core::suites::{oracle_check, run_suite, SuiteOptions, SUITE_IDS};
use runner::{OracleMode, RunFlags};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "homlab",
    about = "homological invariants of graded modules over quotient rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a computation script
    Compute {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "on")]
        oracle: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 400)]
        budget: usize,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 400)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Search for counterexamples to a statement
    Search {
        #[arg(long)]
        statement: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 400)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compare the presentation engine against the linear-algebra oracle
    OracleCheck {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

fn default_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| std::env::var("HOMLAB_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(42)
}

fn print_summary(summary: &homlab_core::CampaignSummary, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(summary).unwrap());
    } else {
        println!(
            "suite {}: {} instances, {} hold, {} fail, {} inconclusive (seed {})",
            summary.statement,
            summary.instances,
            summary.holds,
            summary.fails,
            summary.inconclusive,
            summary.seed
        );
        for note in &summary.notes {
            println!("  {}", note);
        }
    }
}

fn real_main() -> Result<u8, String> {
    let cli = Cli::try_parse().map_err(|e| e.to_string())?;
    match cli.cmd {
        Cmd::Compute {
            file,
            json,
            seed,
            oracle,
            jobs,
            budget,
        } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {}", file.display(), e))?;
            let script = script::parse(&text).map_err(|e| format!("{}: {}", file.display(), e))?;
            let flags = RunFlags {
                seed: default_seed(seed),
                budget,
                jobs,
                oracle: OracleMode::parse(&oracle)?,
            };
            let report = runner::run(&script, &flags)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for cmd in &report.commands {
                    println!("{}", cmd.command);
                    println!("  {}", cmd.result);
                }
            }
            Ok(if report.verified_fail { 2 } else { 0 })
        }
        Cmd::Verify {
            suite,
            samples,
            seed,
            budget,
            jobs,
            exhaustive,
            max_dim,
            json,
        } => {
            let mut opts = SuiteOptions {
                seed: default_seed(seed),
                budget,
                jobs,
                exhaustive,
                ..Default::default()
            };
            if let Some(s) = samples {
                opts.samples = s;
            }
            if let Some(d) = max_dim {
                opts.max_dim = d;
            }
            let summary = run_suite(&suite, &opts)?;
            print_summary(&summary, json);
            Ok(if summary.fails > 0 { 2 } else { 0 })
        }
        Cmd::Search {
            statement,
            samples,
            seed,
            budget,
            jobs,
            json,
        } => {
            if !SUITE_IDS.contains(&statement.as_str()) {
                return Err(format!(
                    "unknown statement `{}`; available: {}",
                    statement,
                    SUITE_IDS.join(", ")
                ));
            }
            let mut opts = SuiteOptions {
                seed: default_seed(seed),
                budget,
                jobs,
                ..Default::default()
            };
            if let Some(s) = samples {
                opts.samples = s;
            }
            let summary = run_suite(&statement, &opts)?;
            print_summary(&summary, json);
            if summary.fails > 0 {
                eprintln!(
                    "verified counterexample(s) found for `{}`; see notes above",
                    statement
                );
                Ok(2)
            } else {
                println!("no counterexample found for `{}`", statement);
                Ok(0)
            }
        }
        Cmd::OracleCheck {
            samples,
            seed,
            jobs,
            json,
        } => {
            let report = oracle_check(samples, default_seed(seed), jobs);
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "cross-engine agreement over {} pairs per ring, Ext^0..Ext^{}:",
                    samples, report.max_ext_index
                );
                for row in &report.rows {
                    println!(
                        "  {}: {}/{} comparisons agree",
                        row.ring, row.agreements, row.comparisons
                    );
                    for d in &row.disagreements {
                        println!("    disagreement: {}", d);
                    }
                }
            }
            Ok(if report.all_equal { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("{}", msg);
            ExitCode::from(1)
        }
    }
}
