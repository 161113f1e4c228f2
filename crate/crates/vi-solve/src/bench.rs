//! The benchmark matrix: build problem instances, run them, summarize.
//!
//! Every cell of the matrix is one `(dimension, theta, algorithm)` triple.
//! A cell is measured in two phases so that instrumentation never leaks
//! into the timing column: one run with history recording on supplies the
//! authoritative counters and status (solves are deterministic, so those
//! transfer), then `repeats` bare runs are timed and their mean wall time
//! is reported.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use vi_core::{
    solve, BoxSet, Example41, FeasibleSet, HistoryTrace, Method, RunReport, RunStatus,
    SolverConfig, Vector,
};

use crate::error::{Error, Result};
use crate::spec::BenchmarkSpec;

/// Problem families the harness can build.
pub const PROBLEM_TAGS: [&str; 1] = ["example41"];

/// One line of the benchmark summary.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub m: usize,
    pub theta: f64,
    pub algorithm: String,
    /// How the traced run ended. Not part of the CSV schema; the binary
    /// uses it to decide its exit code.
    pub status: RunStatus,
    pub iterations: u64,
    pub num_projections: u64,
    pub num_evals: u64,
    /// Mean wall time of the untraced repetitions, in seconds.
    pub cpu_time_s: f64,
}

/// Builds the operator, feasible set, and start point for a problem tag.
///
/// `example41` is the radial operator `F(z) = (‖z‖ + 1/(‖z‖ + theta)) z`
/// over the box with per-coordinate bounds `±1/j`, started from the
/// all-ones vector, which lies outside the box in every coordinate past
/// the first.
pub fn build_problem(
    problem: &str,
    m: usize,
    theta: f64,
) -> Result<(Example41, FeasibleSet, Vector)> {
    if problem != "example41" {
        return Err(Error::UnknownProblem {
            name: problem.to_string(),
        });
    }
    let operator = Example41::new(theta)?;
    let set = FeasibleSet::from(BoxSet::example41(m)?);
    let start = Vector::constant(m, 1.0)?;
    Ok((operator, set, start))
}

/// Key under which a cell's trace is filed, also its trace CSV file stem.
pub fn run_key(problem: &str, m: usize, theta: f64, algorithm: &str) -> String {
    format!("{problem}_m{m}_theta{theta}_{algorithm}")
}

struct MatrixCell {
    m: usize,
    theta: f64,
    algorithm: String,
}

/// Worker cap: `VI_SOLVE_THREADS` if set, logical processor count if not.
fn thread_cap() -> Result<usize> {
    match std::env::var("VI_SOLVE_THREADS") {
        Ok(raw) => {
            let parsed: Option<usize> = raw.trim().parse().ok();
            match parsed {
                Some(n) if n > 0 => Ok(n),
                _ => Err(Error::BadThreadCount { value: raw }),
            }
        }
        Err(std::env::VarError::NotPresent) => Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)),
        Err(std::env::VarError::NotUnicode(_)) => Err(Error::BadThreadCount {
            value: "<non-unicode>".to_string(),
        }),
    }
}

fn run_cell(cell: &MatrixCell, spec: &BenchmarkSpec) -> Result<(SummaryRow, HistoryTrace)> {
    let (operator, set, start) = build_problem(&spec.problem, cell.m, cell.theta)?;
    let method = spec.method_for(&cell.algorithm)?;

    let traced_config = SolverConfig {
        epsilon: 0.0,
        tolerance: spec.tolerance,
        max_iter: spec.max_iter,
        record_history: true,
    };
    let traced = solve(&operator, &set, &method, &traced_config, &start)?;

    let timed_config = SolverConfig {
        record_history: false,
        ..traced_config
    };
    let mut total_seconds = 0.0;
    for _ in 0..spec.repeats {
        let timed = solve(&operator, &set, &method, &timed_config, &start)?;
        total_seconds += timed.wall_time_seconds;
    }

    let row = SummaryRow {
        m: cell.m,
        theta: cell.theta,
        algorithm: cell.algorithm.clone(),
        status: traced.status,
        iterations: traced.iterations,
        num_projections: traced.num_projections,
        num_evals: traced.num_evals,
        cpu_time_s: total_seconds / f64::from(spec.repeats),
    };
    let history = traced.history.unwrap_or_default();
    Ok((row, history))
}

/// Runs the full matrix described by `spec`.
///
/// Rows come back sorted by `(m, theta, algorithm)`; traces are keyed by
/// [`run_key`]. Cells run concurrently up to the worker cap, but the timed
/// repetitions of any one cell stay on a single worker so their timings
/// remain comparable. A run that stops without converging is still a row;
/// its status says what happened.
pub fn run_benchmark(
    spec: &BenchmarkSpec,
) -> Result<(Vec<SummaryRow>, BTreeMap<String, HistoryTrace>)> {
    let workers = thread_cap()?;

    let mut cells = Vec::new();
    for &m in &spec.dims {
        for &theta in &spec.thetas {
            for algorithm in &spec.algorithms {
                cells.push(MatrixCell {
                    m,
                    theta,
                    algorithm: algorithm.clone(),
                });
            }
        }
    }
    cells.sort_by(|a, b| {
        (a.m, a.theta, &a.algorithm)
            .partial_cmp(&(b.m, b.theta, &b.algorithm))
            .expect("positive finite thetas are totally ordered")
    });

    let next = AtomicUsize::new(0);
    let slots: Vec<OnceLock<Result<(SummaryRow, HistoryTrace)>>> =
        (0..cells.len()).map(|_| OnceLock::new()).collect();

    std::thread::scope(|scope| {
        for _ in 0..workers.min(cells.len()) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(index) else { break };
                let outcome = run_cell(cell, spec);
                let _ = slots[index].set(outcome);
            });
        }
    });

    let mut rows = Vec::with_capacity(cells.len());
    let mut traces = BTreeMap::new();
    for (cell, slot) in cells.iter().zip(slots) {
        let (row, history) = slot
            .into_inner()
            .expect("every cell index was claimed by a worker")?;
        traces.insert(
            run_key(&spec.problem, cell.m, cell.theta, &cell.algorithm),
            history,
        );
        rows.push(row);
    }
    Ok((rows, traces))
}

/// Solves a single instance outside the matrix machinery.
pub fn run_single(
    problem: &str,
    m: usize,
    theta: f64,
    method: &Method,
    config: &SolverConfig,
) -> Result<RunReport> {
    let (operator, set, start) = build_problem(problem, m, theta)?;
    Ok(solve(&operator, &set, method, config, &start)?)
}
