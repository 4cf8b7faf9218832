//! `hkverify`: run the hkfiber verification suites from the command line.
//!
//! Exit codes: 0 all checks passed, 1 verification failure, 2 configuration
//! error. All state is explicit in flags; reports are deterministic JSON.

use clap::{Args, Parser, Subcommand};
use hkfiber::report::{Backend, SuiteConfig};
use hkfiber::suites;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hkverify", version, about = "Pointwise hyperkähler linear algebra verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Quaternionic dimension of the model fiber (1..=3).
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Bundle rank for curvature suites (1..=4).
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// Number of random samples.
    #[arg(long, default_value_t = 100)]
    samples: u64,
    /// RNG seed; every sample derives its own stream from (seed, index).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Scalar backend: exact (rational) or float.
    #[arg(long, default_value = "exact")]
    backend: Backend,
    /// Coefficient tolerance for the float backend.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the JSON report(s) to this path instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Negate one sign in the J dictionary (mutation self-test).
    #[arg(long, default_value_t = false)]
    fault_inject: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single named suite.
    Verify {
        /// Suite name (see `hkverify list`).
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run every suite over its supported (n, rank) grid.
    All {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Print the measured constants (c_n, Hodge-Riemann ratios, degree
    /// identity constants) as a table.
    Constants {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// List the available suites.
    List,
}

fn config_from(suite: &str, opts: &CommonOpts) -> SuiteConfig {
    SuiteConfig {
        suite: suite.to_string(),
        n: opts.n,
        rank: opts.rank,
        samples: opts.samples,
        seed: opts.seed,
        backend: opts.backend,
        tolerance: opts.tolerance,
        fault_inject: opts.fault_inject,
    }
}

fn write_output(path: &Option<PathBuf>, contents: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, contents).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::List => {
            for s in suites::SUITE_NAMES {
                println!("{s}");
            }
            Ok(true)
        }
        Command::Verify { suite, opts } => {
            let cfg = config_from(&suite, &opts);
            let report = suites::run_suite(&cfg).map_err(|e| e.to_string())?;
            eprintln!(
                "{}: {} (pass {}, fail {}, degenerate {}, {} ms)",
                report.suite,
                if report.passed { "PASS" } else { "FAIL" },
                report.pass_count,
                report.fail_count,
                report.degenerate_count,
                report.wall_time_ms
            );
            let passed = report.passed;
            write_output(&opts.report, &report.to_json_string())?;
            Ok(passed)
        }
        Command::All { opts } => {
            let base = config_from("conventions", &opts);
            let mut all_passed = true;
            let mut reports = Vec::new();
            for cfg in suites::all_configs(&base) {
                match suites::run_suite(&cfg) {
                    Ok(report) => {
                        eprintln!(
                            "{} (n={}, rank={}): {} (pass {}, fail {}, degenerate {}, {} ms)",
                            report.suite,
                            cfg.n,
                            cfg.rank,
                            if report.passed { "PASS" } else { "FAIL" },
                            report.pass_count,
                            report.fail_count,
                            report.degenerate_count,
                            report.wall_time_ms
                        );
                        all_passed &= report.passed;
                        reports.push(serde_json::to_value(&report).expect("report json"));
                    }
                    Err(e) => {
                        eprintln!("{} (n={}, rank={}): ERROR {e}", cfg.suite, cfg.n, cfg.rank);
                        all_passed = false;
                        reports.push(serde_json::json!({
                            "suite": cfg.suite,
                            "config": cfg,
                            "error": e.to_string(),
                        }));
                    }
                }
            }
            let doc = serde_json::json!({
                "schema_version": hkfiber::report::SCHEMA_VERSION,
                "passed": all_passed,
                "reports": reports,
            });
            write_output(&opts.report, &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(all_passed)
        }
        Command::Constants { opts } => {
            let mut rows: Vec<(String, String)> = Vec::new();
            for n in 1..=3usize {
                let mut cfg = config_from("lemma74", &opts);
                cfg.n = n;
                cfg.samples = opts.samples.min(50);
                let report = suites::run_suite(&cfg).map_err(|e| e.to_string())?;
                for (k, v) in &report.constants {
                    rows.push((format!("{k} (n={n})"), v.to_string()));
                }
            }
            for n in 2..=3usize {
                let mut cfg = config_from("hodge_riemann", &opts);
                cfg.n = n;
                cfg.samples = opts.samples.min(50);
                let report = suites::run_suite(&cfg).map_err(|e| e.to_string())?;
                for (k, v) in &report.constants {
                    rows.push((format!("{k} (n={n}, rank={})", cfg.rank), v.to_string()));
                }
            }
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(8);
            println!("{:width$}  value", "constant");
            for (k, v) in rows {
                println!("{k:width$}  {v}");
            }
            Ok(true)
        }
    }
}
