//! CSV output for benchmark results.
//!
//! Both writers emit UTF-8 with LF line endings and a terminating newline,
//! and both render floats with six significant digits through [`fmt_sig6`],
//! so identical inputs produce byte-identical files on every platform.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use vi_core::HistoryTrace;

use crate::bench::SummaryRow;
use crate::error::{Error, Result};

/// Renders a float with six significant digits.
///
/// Magnitudes in `[1e-4, 1e6)` use fixed-point notation, everything else
/// scientific; zero is `0.00000`. The mapping from value to text is pure,
/// which is what makes re-runs byte-comparable.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0.00000".to_string();
    }
    if !x.is_finite() {
        return format!("{x:.5e}");
    }
    let magnitude = x.abs();
    if (1e-4..1e6).contains(&magnitude) {
        // Shortest-round-trip formatting gives the decimal exponent without
        // log10 boundary surprises.
        let scientific = format!("{magnitude:e}");
        let exponent: i32 = scientific
            .split('e')
            .nth(1)
            .and_then(|e| e.parse().ok())
            .unwrap_or(0);
        let precision = (5 - exponent).max(0) as usize;
        format!("{x:.precision$}")
    } else {
        format!("{x:.5e}")
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(BufWriter::new(file))
}

fn finish(mut out: BufWriter<File>, path: &Path) -> Result<()> {
    out.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes the benchmark summary table.
///
/// Header: `m,theta,algorithm,iter,num_pc,num_f,cpu_time_s`.
pub fn emit_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let mut out = create(path)?;
    let write = |out: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(out, "m,theta,algorithm,iter,num_pc,num_f,cpu_time_s")?;
        for row in rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                row.m,
                fmt_sig6(row.theta),
                row.algorithm,
                row.iterations,
                row.num_projections,
                row.num_evals,
                fmt_sig6(row.cpu_time_s),
            )?;
        }
        Ok(())
    };
    write(&mut out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(out, path)
}

/// Writes one run's per-iteration history.
///
/// Header: `n,E_n,lambda_n,elapsed_s`; one row per recorded iteration.
pub fn emit_trace_csv(trace: &HistoryTrace, path: &Path) -> Result<()> {
    let mut out = create(path)?;
    let write = |out: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(out, "n,E_n,lambda_n,elapsed_s")?;
        for row in trace.rows() {
            writeln!(
                out,
                "{},{},{},{}",
                row.n,
                fmt_sig6(row.e_n),
                fmt_sig6(row.lambda_n),
                fmt_sig6(row.elapsed_seconds),
            )?;
        }
        Ok(())
    };
    write(&mut out).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    finish(out, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vi_core::RunStatus;

    #[test]
    fn six_significant_digits_across_magnitudes() {
        assert_eq!(fmt_sig6(0.0), "0.00000");
        assert_eq!(fmt_sig6(1.0), "1.00000");
        assert_eq!(fmt_sig6(10.0), "10.0000");
        assert_eq!(fmt_sig6(-2.5), "-2.50000");
        assert_eq!(fmt_sig6(1.23456789), "1.23457");
        assert_eq!(fmt_sig6(123456.7), "123457");
        assert_eq!(fmt_sig6(0.000123456789), "0.000123457");
        assert_eq!(fmt_sig6(1e-8), "1.00000e-8");
        assert_eq!(fmt_sig6(1.23e7), "1.23000e7");
    }

    #[test]
    fn formatted_values_parse_back_close() {
        for &x in &[1.0, -0.5, 3.7e-9, 8.123456e11, 0.00042, 999999.4, 1e-4] {
            let text = fmt_sig6(x);
            let back: f64 = text.parse().unwrap();
            assert!(
                ((back - x) / x).abs() < 1e-5,
                "{x} -> {text} -> {back}"
            );
        }
    }

    #[test]
    fn summary_file_shape() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("summary.csv");

        emit_summary_csv(&[], &path).unwrap();
        let empty = std::fs::read_to_string(&path).unwrap();
        assert_eq!(empty, "m,theta,algorithm,iter,num_pc,num_f,cpu_time_s\n");

        let row = SummaryRow {
            m: 20000,
            theta: 1.0,
            algorithm: "tseng-adaptive".to_string(),
            status: RunStatus::Converged,
            iterations: 88,
            num_projections: 88,
            num_evals: 176,
            cpu_time_s: 0.0123456,
        };
        emit_summary_csv(std::slice::from_ref(&row), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "m,theta,algorithm,iter,num_pc,num_f,cpu_time_s\n20000,1.00000,tseng-adaptive,88,88,176,0.0123456\n"
        );
        assert!(!text.contains('\r'));
    }

    #[test]
    fn trace_file_shape() {
        let mut trace = HistoryTrace::new();
        trace.append(1, 100.0, 0.01, 0.5).unwrap();
        trace.append(2, 12.5, 0.011, 0.75).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.csv");
        emit_trace_csv(&trace, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,E_n,lambda_n,elapsed_s");
        assert_eq!(lines.len(), 3);
        assert!(text.ends_with('\n'));
        for line in &lines[1..] {
            let e_n: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
            assert!(e_n.is_finite());
        }
    }
}
