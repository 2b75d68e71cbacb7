use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use powersort::policy::DEFAULT_MIN_RUN_LEN;
use powersort_bench::{
    generate::default_run_len, parse_count, run_benchmark, threads_from_env, write_csv, Algo,
    ElementKind, GeneratorSpec, InputKind, Measure, Plan,
};

/// Benchmark stable Powersort variants and write one CSV row per algorithm and trial.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Algorithms to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    algo: Vec<Algo>,
    #[arg(long, value_enum)]
    input: InputKind,
    /// Input size; scientific notation such as 1e6 is accepted.
    #[arg(long, value_parser = count)]
    n: usize,
    /// Mean run length for random-runs inputs [default: round(sqrt(n))].
    #[arg(long, value_parser = count)]
    expected_run_len: Option<usize>,
    #[arg(long, value_parser = count)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_parser = count, default_value_t = DEFAULT_MIN_RUN_LEN)]
    min_run_len: usize,
    /// Quantities to record, comma separated.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "time,mergecost,comparisons,scanned"
    )]
    measure: Vec<Measure>,
    #[arg(long, value_enum, default_value = "int")]
    element: ElementKind,
    /// Output file; `-` writes to stdout.
    #[arg(long)]
    csv: PathBuf,
}

fn count(s: &str) -> Result<usize, String> {
    parse_count(s).map_err(|e| e.to_string())
}

fn main() -> anyhow::Result<ExitCode> {
    let args = Args::parse();
    let spec = GeneratorSpec {
        kind: args.input,
        n: args.n,
        expected_run_len: args
            .expected_run_len
            .unwrap_or_else(|| default_run_len(args.n)),
        seed: args.seed,
    };
    let plan = Plan {
        algos: args.algo,
        spec,
        trials: args.trials as u64,
        measures: args.measure,
        min_run_len: args.min_run_len,
        element: args.element,
    };
    let report = run_benchmark(&plan, threads_from_env())?;

    if args.csv.as_os_str() == "-" {
        write_csv(&report.rows, std::io::stdout().lock())?;
    } else {
        let file =
            File::create(&args.csv).with_context(|| format!("creating {}", args.csv.display()))?;
        write_csv(&report.rows, file)?;
    }

    for f in &report.failures {
        eprintln!(
            "verification failed: algo {} trial {}: {}",
            f.algo.id(),
            f.trial,
            f.error
        );
    }
    Ok(if report.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
