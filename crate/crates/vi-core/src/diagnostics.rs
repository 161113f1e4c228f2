//! Convergence measurement and per-iteration history.

use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Scaled residual `E_n = ‖z - w‖ / lambda` used as the stopping measure.
///
/// `w` is the projected point produced from `z` with stepsize `lambda`, so
/// this is the norm of the natural residual at `z` divided by the stepsize
/// that produced it. Requires `lambda > 0`.
pub fn compute_en(z: &Vector, w: &Vector, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositive {
            name: "lambda",
            value: lambda,
        });
    }
    Ok(z.sub(w)?.norm() / lambda)
}

/// One recorded iteration of a solve.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// 1-based iteration index.
    pub n: u64,
    /// Scaled residual at this iteration.
    pub e_n: f64,
    /// Stepsize used by this iteration.
    pub lambda_n: f64,
    /// Seconds since the solve loop started.
    pub elapsed_seconds: f64,
}

/// Append-only per-iteration history of a solve.
///
/// Rows carry strictly increasing iteration indices and nondecreasing elapsed
/// times; `append` enforces both, plus a positive stepsize and a nonnegative
/// residual.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HistoryTrace {
    rows: Vec<TraceRow>,
}

impl HistoryTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&mut self, n: u64, e_n: f64, lambda_n: f64, elapsed_seconds: f64) -> Result<()> {
        if let Some(last) = self.rows.last() {
            if n <= last.n {
                return Err(Error::NonMonotoneTrace {
                    last: last.n,
                    attempted: n,
                });
            }
            if elapsed_seconds < last.elapsed_seconds {
                return Err(Error::DecreasingElapsed {
                    last: last.elapsed_seconds,
                    attempted: elapsed_seconds,
                });
            }
        }
        if !(lambda_n > 0.0) {
            return Err(Error::NonPositive {
                name: "lambda_n",
                value: lambda_n,
            });
        }
        if e_n < 0.0 {
            return Err(Error::Negative {
                name: "e_n",
                value: e_n,
            });
        }
        self.rows.push(TraceRow {
            n,
            e_n,
            lambda_n,
            elapsed_seconds,
        });
        Ok(())
    }

    pub fn rows(&self) -> &[TraceRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_scales_by_stepsize() {
        let z = Vector::new(vec![1.0]).unwrap();
        let w = Vector::new(vec![0.5]).unwrap();
        let e = compute_en(&z, &w, 0.01).unwrap();
        assert!((e - 50.0).abs() < 1e-12);
        let tiny = Vector::new(vec![1.0 + 1e-10]).unwrap();
        let e = compute_en(&tiny, &z, 0.01).unwrap();
        assert!((e - 1e-8).abs() < 1e-12);
    }

    #[test]
    fn residual_requires_positive_stepsize() {
        let z = Vector::new(vec![1.0]).unwrap();
        assert!(compute_en(&z, &z, 0.0).is_err());
        assert!(compute_en(&z, &z, -0.5).is_err());
        assert_eq!(compute_en(&z, &z, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn trace_enforces_ordering() {
        let mut trace = HistoryTrace::new();
        trace.append(1, 0.5, 0.01, 0.0).unwrap();
        trace.append(2, 0.4, 0.01, 0.001).unwrap();
        assert_eq!(
            trace.append(2, 0.3, 0.01, 0.002).unwrap_err(),
            Error::NonMonotoneTrace {
                last: 2,
                attempted: 2
            }
        );
        assert!(trace.append(3, 0.3, 0.01, 0.0001).is_err());
        assert_eq!(trace.len(), 2);
        assert_eq!(trace.last().unwrap().n, 2);
    }

    #[test]
    fn trace_rejects_bad_rows() {
        let mut trace = HistoryTrace::new();
        assert!(trace.append(1, 0.5, 0.0, 0.0).is_err());
        assert!(trace.append(1, -0.5, 0.01, 0.0).is_err());
        assert!(trace.is_empty());
    }
}
