//! Command-line surface: exact Gauss-sum evaluation, Weyl sums, the
//! verification suites, parameter sweeps and recursion traces.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use cubic_weyl::error::Error;
use cubic_weyl::expsum::{weyl_sum, CubicPhase};
use cubic_weyl::gauss::{gauss_brute, gauss_closed, GaussParams};
use cubic_weyl::harness::{records_to_csv, sweep, trace_recursion, SweepConfig};
use cubic_weyl::verify as suites;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cubic-weyl", version, about = "Gauss sums, cubic Weyl sums and empirical bound sweeps")]
struct Cli {
    /// Seed for the seeded verification suites (overrides sweep config seeds)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the primary output (CSV/JSON) to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GaussMode {
    Closed,
    Brute,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VerifySuite {
    Gauss,
    Identities,
    Reciprocity,
    Poisson,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the complete Gauss sum G(a, l; q)
    Gauss {
        a: i128,
        ell: i128,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        #[arg(long, value_enum, default_value_t = GaussMode::Both)]
        mode: GaussMode,
    },
    /// Evaluate S = sum_{n=1..N} e(a n^3 / q + gamma n)
    Weylsum {
        a: i128,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        gamma: f64,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: VerifySuite,
        /// Size cap for the exhaustive suites
        #[arg(long, default_value_t = 300)]
        cap: u64,
    },
    /// Run a sweep described by a key = value config file and emit CSV
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Trace one pass of the differencing/reduction pipeline as JSON
    Trace {
        a: i128,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        q: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        gamma: f64,
        /// Y = floor(N * yrule) for the dual-sum range
        #[arg(long, default_value_t = 0.5)]
        yrule: f64,
    },
}

fn emit(out: &Option<PathBuf>, payload: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, payload),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let seed = cli.seed.unwrap_or(0);

    match cli.command {
        Command::Gauss { a, ell, q, mode } => {
            let params = match GaussParams::new(a, ell, q) {
                Ok(p) => p,
                Err(e) => return usage_error(&e.to_string()),
            };
            let brute = if mode != GaussMode::Closed {
                match gauss_brute(&params) {
                    Ok(v) => Some(v),
                    Err(e) => return usage_error(&e.to_string()),
                }
            } else {
                None
            };
            let closed = if mode != GaussMode::Brute {
                match gauss_closed(&params) {
                    Ok(v) => Some(v),
                    Err(Error::NotCoprime { .. }) => {
                        println!("closed: not available (gcd(a, q) > 1), falling back to brute force");
                        None
                    }
                    Err(e) => return usage_error(&e.to_string()),
                }
            } else {
                None
            };
            if let Some(v) = &closed {
                println!("closed: {v}");
                println!("closed value: {:.12e} + {:.12e}i", v.to_complex().re, v.to_complex().im);
            }
            if let Some(b) = brute {
                println!("brute value:  {:.12e} + {:.12e}i", b.re, b.im);
                if let Some(v) = &closed {
                    println!("abs diff: {:.3e}", (v.to_complex() - b).norm());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Weylsum { a, q, n, gamma } => {
            let phase = match CubicPhase::new(a, q, gamma) {
                Ok(p) => p,
                Err(e) => return usage_error(&e.to_string()),
            };
            let s = match weyl_sum(&phase, n) {
                Ok(s) => s,
                Err(e) => return usage_error(&e.to_string()),
            };
            let norm = s.value.norm();
            println!("S = {:.12e} + {:.12e}i", s.value.re, s.value.im);
            println!("|S| = {:.12e}  (err bound {:.3e})", norm, s.err_bound);
            println!(
                "|S| / (qN)^(1/4) = {:.12e}",
                norm / ((q as f64 * n as f64).powf(0.25))
            );
            ExitCode::SUCCESS
        }
        Command::Verify { suite, cap } => {
            let mut results = Vec::new();
            let gauss_suites = |results: &mut Vec<suites::SuiteResult>| {
                results.push(suites::gauss_oracle_suite(cap));
                results.push(suites::gauss_magnitude_suite((3 * cap + 1).min(999) | 1));
                results.push(suites::gauss_vanishing_suite((6 * cap).clamp(20, 2000), seed));
                results.push(suites::gauss_multiplicativity_suite(
                    500,
                    (cap * cap).clamp(100, 100_000),
                    seed ^ 1,
                ));
                results.push(suites::gauss_doubling_suite((cap * 2 + 1).min(499) | 1));
            };
            let identity_suites = |results: &mut Vec<suites::SuiteResult>| {
                results.push(suites::differencing_suite(50, (cap * 6).clamp(60, 2000), seed ^ 2));
                results.push(suites::partition_suite(20, seed ^ 3));
                results.push(suites::short_approx_suite(200, (cap * cap / 9).clamp(10, 10_000), seed ^ 4));
                results.push(suites::congruence_count_suite(seed ^ 5));
            };
            match suite {
                VerifySuite::Gauss => gauss_suites(&mut results),
                VerifySuite::Identities => identity_suites(&mut results),
                VerifySuite::Reciprocity => {
                    results.push(suites::reciprocity_suite((cap as i128).min(499) | 1, 100_000, seed ^ 6))
                }
                VerifySuite::Poisson => results.push(suites::poisson_suite(20, seed ^ 7)),
                VerifySuite::All => {
                    gauss_suites(&mut results);
                    identity_suites(&mut results);
                    results.push(suites::reciprocity_suite((cap as i128).min(499) | 1, 100_000, seed ^ 6));
                    results.push(suites::poisson_suite(20, seed ^ 7));
                }
            }
            let mut failed = false;
            println!("{:<24} {:>12} {:>9}", "suite", "checks", "failures");
            for r in &results {
                println!("{:<24} {:>12} {:>9}", r.name, r.checks, r.failures);
                if !r.ok() {
                    failed = true;
                }
            }
            if failed {
                for r in &results {
                    if let Some(msg) = &r.first_failure {
                        eprintln!("first counterexample in {}: {msg}", r.name);
                        break;
                    }
                }
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Command::Sweep { config } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => return usage_error(&format!("cannot read {}: {e}", config.display())),
            };
            let mut cfg = match SweepConfig::parse(&text) {
                Ok(c) => c,
                Err(e) => return usage_error(&e.to_string()),
            };
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            let out = match sweep(&cfg) {
                Ok(o) => o,
                Err(e) => return usage_error(&e.to_string()),
            };
            for d in &out.diagnostics {
                eprintln!("flag: {d}");
            }
            if emit(&cli.out, &records_to_csv(&out.records)).is_err() {
                return usage_error("cannot write output file");
            }
            ExitCode::SUCCESS
        }
        Command::Trace { a, q, n, gamma, yrule } => {
            match trace_recursion(a, q, n, gamma, yrule) {
                Ok(report) => {
                    let json = report.to_json() + "\n";
                    if emit(&cli.out, &json).is_err() {
                        return usage_error("cannot write output file");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
    }
}
