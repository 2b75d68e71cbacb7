//! Benchmark harness for powersort: input generators, trial execution over an
//! algorithm matrix, and CSV output.

pub mod element;
pub mod generate;

use std::io::Write;
use std::time::Instant;

use powersort::{Config, Kernel, SortStats};
use rayon::prelude::*;

pub use element::{Element, Record, VerifyError};
pub use generate::{generate, GeneratorSpec, InputKind};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid count {0:?}")]
    InvalidCount(String),
    #[error(transparent)]
    Sort(#[from] powersort::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T> = std::result::Result<T, BenchError>;

pub const THREADS_VAR: &str = "POWERSORT_THREADS";

pub const CSV_HEADER: &str = "algo,n,seed,trial,time_ns,comparisons,merge_cost,buffer_cost,moves,max_stack,runs,merges2,merges3,merges4,scanned_estimate,entropy_bits";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algo {
    #[value(name = "2way")]
    TwoWay,
    #[value(name = "2way-copy-smaller")]
    TwoWayCopySmaller,
    #[value(name = "2way-nosentinel")]
    TwoWayNoSentinel,
    #[value(name = "4way")]
    FourWay,
    #[value(name = "4way-nosentinel")]
    FourWayNoSentinel,
    #[value(name = "std-stable")]
    StdStable,
}

impl Algo {
    pub const ALL: [Algo; 6] = [
        Algo::TwoWay,
        Algo::TwoWayCopySmaller,
        Algo::TwoWayNoSentinel,
        Algo::FourWay,
        Algo::FourWayNoSentinel,
        Algo::StdStable,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algo::TwoWay => "2way",
            Algo::TwoWayCopySmaller => "2way-copy-smaller",
            Algo::TwoWayNoSentinel => "2way-nosentinel",
            Algo::FourWay => "4way",
            Algo::FourWayNoSentinel => "4way-nosentinel",
            Algo::StdStable => "std-stable",
        }
    }

    /// Powersort configuration, or `None` for the standard library sort.
    pub fn config(self, min_run_len: usize) -> Option<Config> {
        let config = match self {
            Algo::TwoWay => Config::two_way(),
            Algo::TwoWayCopySmaller => Config::two_way().with_kernel(Kernel::CopySmaller),
            Algo::TwoWayNoSentinel => Config::two_way().with_kernel(Kernel::NoSentinel),
            Algo::FourWay => Config::four_way(),
            Algo::FourWayNoSentinel => Config::four_way().with_kernel(Kernel::NoSentinel),
            Algo::StdStable => return None,
        };
        Some(config.with_min_run_len(min_run_len))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Measure {
    Time,
    #[value(name = "mergecost")]
    MergeCost,
    Comparisons,
    Scanned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ElementKind {
    Int,
    Record,
}

/// One CSV row. Columns of measures that were not requested stay empty.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Row {
    pub algo: &'static str,
    pub n: usize,
    pub seed: u64,
    pub trial: u64,
    pub time_ns: Option<u64>,
    pub comparisons: Option<u64>,
    pub merge_cost: Option<u64>,
    pub buffer_cost: Option<u64>,
    pub moves: Option<u64>,
    pub max_stack: Option<usize>,
    pub runs: Option<u64>,
    pub merges2: Option<u64>,
    pub merges3: Option<u64>,
    pub merges4: Option<u64>,
    pub scanned_estimate: Option<u64>,
    pub entropy_bits: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub algos: Vec<Algo>,
    pub spec: GeneratorSpec,
    pub trials: u64,
    pub measures: Vec<Measure>,
    pub min_run_len: usize,
    pub element: ElementKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub algo: Algo,
    pub trial: u64,
    pub error: VerifyError,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub rows: Vec<Row>,
    pub failures: Vec<Failure>,
}

/// Sorts `v` with `algo`, without instrumentation.
pub fn sort_plain<E: Element>(v: &mut [E], algo: Algo, min_run_len: usize) -> Result<()> {
    match algo.config(min_run_len) {
        Some(config) => powersort::sort_unmetered(v, &config)?,
        None => v.sort(),
    }
    Ok(())
}

/// Sorts `v` with `algo` and returns its counters. The standard library sort
/// only reports comparisons.
pub fn sort_counted<E: Element>(v: &mut [E], algo: Algo, min_run_len: usize) -> Result<SortStats> {
    match algo.config(min_run_len) {
        Some(config) => Ok(powersort::stable_sort_with(v, &config)?),
        None => {
            let mut stats = SortStats::new(v.len());
            let mut count = 0;
            v.sort_by(|a, b| {
                count += 1;
                a.cmp(b)
            });
            stats.comparisons = count;
            Ok(stats)
        }
    }
}

fn run_trial<E: Element>(
    algo: Algo,
    input: &[E],
    plan: &Plan,
    trial: u64,
) -> Result<(Row, Option<VerifyError>)> {
    let spec = &plan.spec;
    let sum = element::checksum(input);
    let mut row = Row {
        algo: algo.id(),
        n: spec.n,
        seed: spec.seed,
        trial,
        time_ns: None,
        comparisons: None,
        merge_cost: None,
        buffer_cost: None,
        moves: None,
        max_stack: None,
        runs: None,
        merges2: None,
        merges3: None,
        merges4: None,
        scanned_estimate: None,
        entropy_bits: None,
    };
    let mut failure = None;

    if plan.measures.contains(&Measure::Time) {
        let mut v = input.to_vec();
        let start = Instant::now();
        sort_plain(&mut v, algo, plan.min_run_len)?;
        row.time_ns = Some(start.elapsed().as_nanos() as u64);
        failure = failure.or(element::verify(&v, sum).err());
    }

    let counted = [Measure::MergeCost, Measure::Comparisons, Measure::Scanned];
    if plan.measures.iter().any(|m| counted.contains(m)) {
        let mut v = input.to_vec();
        let stats = sort_counted(&mut v, algo, plan.min_run_len)?;
        failure = failure.or(element::verify(&v, sum).err());
        let powersort = algo != Algo::StdStable;
        if plan.measures.contains(&Measure::Comparisons) {
            row.comparisons = Some(stats.comparisons);
        }
        if powersort && plan.measures.contains(&Measure::MergeCost) {
            row.merge_cost = Some(stats.merge_cost);
            row.buffer_cost = Some(stats.buffer_cost);
            row.moves = Some(stats.moves);
            row.max_stack = Some(stats.max_stack_height);
            row.runs = Some(stats.runs_detected);
            let [m2, m3, m4] = stats.merges_by_arity;
            (row.merges2, row.merges3, row.merges4) = (Some(m2), Some(m3), Some(m4));
            row.entropy_bits = Some(stats.entropy_bits());
        }
        if powersort && plan.measures.contains(&Measure::Scanned) {
            row.scanned_estimate = Some(stats.scanned_elements_estimate());
        }
    }
    Ok((row, failure))
}

fn run_typed<E: Element>(plan: &Plan, threads: usize) -> Result<Report> {
    plan.spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()?;
    let per_trial: Vec<Vec<(Row, Option<VerifyError>)>> = pool.install(|| {
        (0..plan.trials)
            .into_par_iter()
            .map(|trial| {
                let input: Vec<E> = element::build(&generate(&plan.spec, trial)?);
                plan.algos
                    .iter()
                    .map(|&algo| run_trial(algo, &input, plan, trial))
                    .collect()
            })
            .collect::<Result<_>>()
    })?;

    let mut report = Report::default();
    for (a, &algo) in plan.algos.iter().enumerate() {
        for (trial, rows) in per_trial.iter().enumerate() {
            let (row, failure) = &rows[a];
            report.rows.push(row.clone());
            if let Some(error) = *failure {
                report.failures.push(Failure {
                    algo,
                    trial: trial as u64,
                    error,
                });
            }
        }
    }
    Ok(report)
}

/// Runs every algorithm of `plan` on every trial input, on up to `threads`
/// worker threads. Rows are ordered by algorithm, then trial.
pub fn run_benchmark(plan: &Plan, threads: usize) -> Result<Report> {
    match plan.element {
        ElementKind::Int => run_typed::<i32>(plan, threads),
        ElementKind::Record => run_typed::<Record>(plan, threads),
    }
}

/// Worker thread count from `POWERSORT_THREADS`, defaulting to 1.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1)
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Parses a count such as `100000`, `1e5` or `2.5e6`.
pub fn parse_count(s: &str) -> Result<usize> {
    let s = s.trim();
    if let Ok(n) = s.replace('_', "").parse::<usize>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| BenchError::InvalidCount(s.into()))?;
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(63) {
        Ok(x as usize)
    } else {
        Err(BenchError::InvalidCount(s.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(algos: Vec<Algo>, kind: InputKind, n: usize, trials: u64) -> Plan {
        Plan {
            algos,
            spec: GeneratorSpec::new(kind, n, 7),
            trials,
            measures: vec![
                Measure::Time,
                Measure::MergeCost,
                Measure::Comparisons,
                Measure::Scanned,
            ],
            min_run_len: 24,
            element: ElementKind::Record,
        }
    }

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e5").unwrap(), 100_000);
        assert_eq!(parse_count("2.5e3").unwrap(), 2500);
        assert_eq!(parse_count("1_000").unwrap(), 1000);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("x").is_err());
    }

    #[test]
    fn header_matches_row_fields() {
        let report =
            run_benchmark(&plan(vec![Algo::FourWay], InputKind::Sorted, 10, 1), 1).unwrap();
        let mut out = Vec::new();
        write_csv(&report.rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn matrix_rows_and_ordering() {
        let report =
            run_benchmark(&plan(Algo::ALL.to_vec(), InputKind::RandomRuns, 3000, 3), 2).unwrap();
        assert!(report.failures.is_empty());
        assert_eq!(report.rows.len(), 18);
        assert_eq!(report.rows[0].algo, "2way");
        assert_eq!(report.rows[2].trial, 2);
        let std_row = &report.rows[15];
        assert_eq!(std_row.algo, "std-stable");
        assert!(std_row.comparisons.is_some() && std_row.merge_cost.is_none());
    }

    #[test]
    fn counters_are_reproducible_and_thread_independent() {
        let p = plan(
            vec![Algo::TwoWay, Algo::FourWay],
            InputKind::RandomRuns,
            5000,
            4,
        );
        let strip = |r: Report| {
            r.rows
                .into_iter()
                .map(|row| Row {
                    time_ns: None,
                    ..row
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(
            strip(run_benchmark(&p, 1).unwrap()),
            strip(run_benchmark(&p, 3).unwrap())
        );
    }
}
