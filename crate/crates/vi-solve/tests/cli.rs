//! Round trips through the compiled binary: flags, exit codes, files.

use std::path::Path;
use std::process::{Command, Output};

fn vi_solve(args: &[&str]) -> Command {
    let mut command = Command::new(env!("CARGO_BIN_EXE_vi-solve"));
    command.args(args);
    // Keep the run matrix deterministic and independent of the caller's
    // environment.
    command.env_remove("VI_SOLVE_THREADS");
    command
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn list_algs_names_all_five_tags() {
    let output = vi_solve(&["list-algs"]).output().expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    let positions: Vec<usize> = [
        "tseng-adaptive",
        "tseng-linesearch",
        "tseng-fixed",
        "subgrad-extragrad",
        "iusem",
    ]
    .iter()
    .map(|tag| text.find(tag).unwrap_or_else(|| panic!("{tag} missing")))
    .collect();
    let mut sorted = positions.clone();
    sorted.sort_unstable();
    assert_eq!(positions, sorted, "tags out of order:\n{text}");
}

#[test]
fn run_converges_and_writes_a_trace() {
    let dir = tempfile::tempdir().expect("temp dir");
    let trace_path = dir.path().join("trace.csv");
    let output = vi_solve(&[
        "run",
        "--problem",
        "example41",
        "--m",
        "200",
        "--theta",
        "1",
        "--alg",
        "tseng-adaptive",
        "--trace",
        trace_path.to_str().expect("utf-8 path"),
    ])
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let text = stdout_of(&output);
    assert!(text.contains("status:    converged"), "{text}");
    assert!(text.contains("num_pc:"), "{text}");

    let trace = std::fs::read_to_string(&trace_path).expect("trace written");
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines[0], "n,E_n,lambda_n,elapsed_s");
    assert!(lines.len() >= 2);
    let last_residual: f64 = lines
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .expect("numeric residual");
    assert!(last_residual < 1e-8, "{last_residual}");
}

#[test]
fn run_reports_budget_exhaustion_with_exit_one() {
    let output = vi_solve(&[
        "run",
        "--problem",
        "example41",
        "--m",
        "200",
        "--theta",
        "1",
        "--alg",
        "tseng-adaptive",
        "--max-iter",
        "1",
    ])
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout_of(&output).contains("max-iter-reached"));
}

#[test]
fn unknown_algorithm_tag_exits_two_and_lists_tags() {
    let output = vi_solve(&[
        "run",
        "--problem",
        "example41",
        "--m",
        "10",
        "--theta",
        "1",
        "--alg",
        "newton",
    ])
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    let text = stderr_of(&output);
    assert!(text.contains("tseng-adaptive"), "{text}");
}

#[test]
fn unknown_problem_exits_two() {
    let output = vi_solve(&[
        "run",
        "--problem",
        "example99",
        "--m",
        "10",
        "--theta",
        "1",
        "--alg",
        "tseng-adaptive",
    ])
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("example41"));
}

fn write_spec(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).expect("spec written");
    path
}

const SMALL_MATRIX: &str = "problem = example41\n\
    dims = 100, 200\n\
    thetas = 1, 5\n\
    algorithms = tseng-adaptive\n\
    repeats = 1\n";

#[test]
fn bench_writes_summary_and_traces() {
    let dir = tempfile::tempdir().expect("temp dir");
    let spec = write_spec(dir.path(), "matrix.spec", SMALL_MATRIX);
    let out_dir = dir.path().join("out");
    let output = vi_solve(&[
        "bench",
        "--spec",
        spec.to_str().expect("utf-8 path"),
        "--out",
        out_dir.to_str().expect("utf-8 path"),
    ])
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));

    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).expect("summary written");
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "m,theta,algorithm,iter,num_pc,num_f,cpu_time_s");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("100,1.00000,tseng-adaptive,"));
    assert!(lines[2].starts_with("100,5.00000,"));
    assert!(lines[3].starts_with("200,1.00000,"));
    assert!(lines[4].starts_with("200,5.00000,"));

    for key in [
        "example41_m100_theta1_tseng-adaptive",
        "example41_m100_theta5_tseng-adaptive",
        "example41_m200_theta1_tseng-adaptive",
        "example41_m200_theta5_tseng-adaptive",
    ] {
        let trace_path = out_dir.join(format!("{key}.csv"));
        assert!(trace_path.exists(), "missing {key}.csv");
    }
}

#[test]
fn bench_falls_back_to_spec_output_dir() {
    let dir = tempfile::tempdir().expect("temp dir");
    let out_dir = dir.path().join("from-spec");
    let body = format!(
        "{SMALL_MATRIX}output_dir = {}\n",
        out_dir.to_str().expect("utf-8 path")
    );
    let spec = write_spec(dir.path(), "matrix.spec", &body);
    let output = vi_solve(&["bench", "--spec", spec.to_str().expect("utf-8 path")])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    assert!(out_dir.join("summary.csv").exists());
}

#[test]
fn bench_without_any_output_dir_exits_two() {
    let dir = tempfile::tempdir().expect("temp dir");
    let spec = write_spec(dir.path(), "matrix.spec", SMALL_MATRIX);
    let output = vi_solve(&["bench", "--spec", spec.to_str().expect("utf-8 path")])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("--out"));
}

#[test]
fn bench_with_missing_spec_exits_two() {
    let output = vi_solve(&["bench", "--spec", "/nonexistent/nowhere.spec", "--out", "/tmp"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn bench_with_unknown_key_exits_two_and_names_it() {
    let dir = tempfile::tempdir().expect("temp dir");
    let spec = write_spec(
        dir.path(),
        "matrix.spec",
        "problem = example41\ndims = 10\nthetas = 1\nalgorithms = tseng-adaptive\nrepeat = 1\n",
    );
    let output = vi_solve(&[
        "bench",
        "--spec",
        spec.to_str().expect("utf-8 path"),
        "--out",
        dir.path().to_str().expect("utf-8 path"),
    ])
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("`repeat`"));
}

#[test]
fn bench_exits_one_when_a_run_hits_its_budget() {
    let dir = tempfile::tempdir().expect("temp dir");
    let spec = write_spec(
        dir.path(),
        "matrix.spec",
        "problem = example41\ndims = 100\nthetas = 1\nalgorithms = tseng-adaptive\nrepeats = 1\nmax_iter = 2\n",
    );
    let out_dir = dir.path().join("out");
    let output = vi_solve(&[
        "bench",
        "--spec",
        spec.to_str().expect("utf-8 path"),
        "--out",
        out_dir.to_str().expect("utf-8 path"),
    ])
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(1), "{}", stderr_of(&output));
    assert!(stdout_of(&output).contains("max-iter-reached"));
    // The matrix still produced its outputs.
    assert!(out_dir.join("summary.csv").exists());
}

#[test]
fn invalid_thread_cap_exits_two() {
    let dir = tempfile::tempdir().expect("temp dir");
    let spec = write_spec(dir.path(), "matrix.spec", SMALL_MATRIX);
    let output = vi_solve(&[
        "bench",
        "--spec",
        spec.to_str().expect("utf-8 path"),
        "--out",
        dir.path().to_str().expect("utf-8 path"),
    ])
    .env("VI_SOLVE_THREADS", "many")
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("VI_SOLVE_THREADS"));
}

#[test]
fn single_thread_cap_is_respected() {
    let dir = tempfile::tempdir().expect("temp dir");
    let spec = write_spec(dir.path(), "matrix.spec", SMALL_MATRIX);
    let out_dir = dir.path().join("out");
    let output = vi_solve(&[
        "bench",
        "--spec",
        spec.to_str().expect("utf-8 path"),
        "--out",
        out_dir.to_str().expect("utf-8 path"),
    ])
    .env("VI_SOLVE_THREADS", "1")
    .output()
    .expect("binary runs");
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    assert!(out_dir.join("summary.csv").exists());
}
