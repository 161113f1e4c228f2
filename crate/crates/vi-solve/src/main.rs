//! Command-line front end for the benchmark harness.
//!
//! Exit codes: 0 when everything ran and converged, 1 when any run failed
//! to converge or an output could not be written, 2 for bad flags, bad
//! spec files, or a bad environment.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vi_solve::{
    emit_summary_csv, emit_trace_csv, fmt_sig6, load_spec, run_benchmark, run_key, run_single,
    Error, Result, SummaryRow,
};

use vi_core::{Method, RunStatus, SolverConfig, ALGORITHM_TAGS};

#[derive(Parser)]
#[command(
    name = "vi-solve",
    version,
    about = "Projection-method benchmarks for variational inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark matrix from a spec file and write CSVs.
    Bench {
        /// Path to a key=value spec file.
        #[arg(long)]
        spec: PathBuf,
        /// Output directory; falls back to the spec's output_dir.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one problem instance and print the report.
    Run {
        /// Problem family tag.
        #[arg(long)]
        problem: String,
        /// Problem dimension.
        #[arg(long)]
        m: usize,
        /// Operator shape parameter.
        #[arg(long)]
        theta: f64,
        /// Algorithm tag; see list-algs.
        #[arg(long)]
        alg: String,
        /// Stop once the scaled residual falls below this.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Iteration budget.
        #[arg(long, default_value_t = 5000)]
        max_iter: u64,
        /// Also write the per-iteration trace CSV here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// List the available algorithm tags.
    ListAlgs,
}

fn print_rows(rows: &[SummaryRow]) {
    println!("m,theta,algorithm,status,iter,num_pc,num_f,cpu_time_s");
    for row in rows {
        println!(
            "{},{},{},{},{},{},{},{}",
            row.m,
            fmt_sig6(row.theta),
            row.algorithm,
            row.status.as_str(),
            row.iterations,
            row.num_projections,
            row.num_evals,
            fmt_sig6(row.cpu_time_s),
        );
    }
}

/// Returns whether every run converged.
fn bench(spec_path: &Path, out: Option<PathBuf>) -> Result<bool> {
    let spec = load_spec(spec_path)?;
    let out_dir = out
        .or_else(|| spec.output_dir.clone())
        .ok_or(Error::NoOutputDir)?;
    std::fs::create_dir_all(&out_dir).map_err(|source| Error::Io {
        path: out_dir.clone(),
        source,
    })?;

    let (rows, traces) = run_benchmark(&spec)?;
    let summary_path = out_dir.join("summary.csv");
    emit_summary_csv(&rows, &summary_path)?;
    for (key, trace) in &traces {
        emit_trace_csv(trace, &out_dir.join(format!("{key}.csv")))?;
    }

    print_rows(&rows);
    println!("summary: {}", summary_path.display());
    println!("traces: {} files in {}", traces.len(), out_dir.display());
    Ok(rows.iter().all(|row| row.status == RunStatus::Converged))
}

/// Returns whether the run converged.
fn run_one(
    problem: &str,
    m: usize,
    theta: f64,
    alg: &str,
    tol: f64,
    max_iter: u64,
    trace: Option<PathBuf>,
) -> Result<bool> {
    let method = Method::default_for_tag(alg)?;
    let config = SolverConfig {
        epsilon: 0.0,
        tolerance: tol,
        max_iter,
        record_history: trace.is_some(),
    };
    let report = run_single(problem, m, theta, &method, &config)?;

    println!("problem:   {}", run_key(problem, m, theta, alg));
    println!("status:    {}", report.status.as_str());
    println!("iter:      {}", report.iterations);
    println!("num_pc:    {}", report.num_projections);
    println!("num_f:     {}", report.num_evals);
    println!("residual:  {}", fmt_sig6(report.final_residual));
    println!("wall_time: {}s", fmt_sig6(report.wall_time_seconds));

    if let (Some(path), Some(history)) = (trace, report.history.as_ref()) {
        emit_trace_csv(history, &path)?;
        println!("trace:     {}", path.display());
    }
    Ok(report.status == RunStatus::Converged)
}

fn list_algs() {
    for tag in ALGORITHM_TAGS {
        let method = Method::default_for_tag(tag).expect("listed tags resolve");
        println!("{tag:<18} {}", method.description());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Bench { spec, out } => bench(&spec, out),
        Command::Run {
            problem,
            m,
            theta,
            alg,
            tol,
            max_iter,
            trace,
        } => run_one(&problem, m, theta, &alg, tol, max_iter, trace),
        Command::ListAlgs => {
            list_algs();
            Ok(true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
