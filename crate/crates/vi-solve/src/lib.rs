//! Benchmark harness for the `vi-core` solvers.
//!
//! The crate has three parts: a flat key-value [spec](spec) format
//! describing a benchmark matrix, a [runner](bench) that executes every
//! `(dimension, theta, algorithm)` cell deterministically, and [CSV
//! writers](csv) for the summary table and per-run convergence traces.
//! The `vi-solve` binary wires them to a command line.
//!
//! Counters in the summary come from an instrumented run and times from
//! separate bare runs, so the reported work of an algorithm is exact while
//! its timing stays unpolluted. Because every solve is deterministic,
//! re-running a spec reproduces everything except the timing column byte
//! for byte.

pub mod bench;
pub mod csv;
mod error;
pub mod spec;

pub use bench::{build_problem, run_benchmark, run_key, run_single, SummaryRow, PROBLEM_TAGS};
pub use csv::{emit_summary_csv, emit_trace_csv, fmt_sig6};
pub use error::{Error, Result};
pub use spec::{load_spec, BenchmarkSpec};

/// Guide chapters compile and run as part of the test suite.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/benchmarking.md")]
    pub struct Benchmarking;
}
