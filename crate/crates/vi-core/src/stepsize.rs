//! Self-adaptive stepsize control.
//!
//! The adaptive solver needs no Lipschitz constant and no line search.
//! Instead it carries a stepsize `lambda_n` forward, capping each candidate
//! by a measured local curvature ratio and allowing a small summable
//! increment `xi_n` on top of the previous value. Two consequences follow
//! directly from the update rule and are enforced by tests: the stepsize
//! never exceeds `lambda_1 + sum(xi)`, and it never jumps up by more than
//! `xi_n` in one iteration.

use crate::error::{Error, Result};
use crate::linalg::Vector;

/// The increment sequence `xi_n >= 0` added to the stepsize each iteration.
///
/// Sequences must have a finite sum, which is what lets the stepsize settle;
/// `PowerLaw` therefore requires an exponent above one.
#[derive(Debug, Clone, PartialEq)]
pub enum XiSchedule {
    /// `xi_n = 0`: the stepsize can only shrink.
    Zero,
    /// `xi_n = c`. Not summable unless `c = 0`; useful for exercising the
    /// update rule in isolation, not for production solves.
    Constant(f64),
    /// `xi_n = 1 / (n + 1)^exponent` with `exponent > 1`.
    PowerLaw { exponent: f64 },
}

impl XiSchedule {
    /// Value of `xi_n` for 1-based iteration index `n`.
    pub fn value(&self, n: u64) -> f64 {
        match self {
            XiSchedule::Zero => 0.0,
            XiSchedule::Constant(c) => *c,
            XiSchedule::PowerLaw { exponent } => (n as f64 + 1.0).powf(-exponent),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            XiSchedule::Zero => Ok(()),
            XiSchedule::Constant(c) => {
                if !(*c >= 0.0) || !c.is_finite() {
                    return Err(Error::Negative {
                        name: "xi",
                        value: *c,
                    });
                }
                Ok(())
            }
            XiSchedule::PowerLaw { exponent } => {
                if !(*exponent > 1.0) || !exponent.is_finite() {
                    return Err(Error::NonPositive {
                        name: "xi_exponent - 1",
                        value: exponent - 1.0,
                    });
                }
                Ok(())
            }
        }
    }
}

/// Carries the adaptive stepsize state across iterations.
#[derive(Debug, Clone)]
pub struct StepsizeController {
    mu: f64,
    lambda: f64,
    lambda_initial: f64,
    xi: XiSchedule,
    xi_partial_sum: f64,
}

impl StepsizeController {
    /// Requires `mu` strictly inside `(0, 1)` and `lambda1 > 0`.
    pub fn new(mu: f64, lambda1: f64, xi: XiSchedule) -> Result<Self> {
        if !(mu > 0.0 && mu < 1.0) {
            return Err(Error::NotInUnitInterval {
                name: "mu",
                value: mu,
            });
        }
        if !(lambda1 > 0.0) || !lambda1.is_finite() {
            return Err(Error::NonPositive {
                name: "lambda1",
                value: lambda1,
            });
        }
        xi.validate()?;
        Ok(Self {
            mu,
            lambda: lambda1,
            lambda_initial: lambda1,
            xi,
            xi_partial_sum: 0.0,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Current stepsize `lambda_n`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn lambda_initial(&self) -> f64 {
        self.lambda_initial
    }

    /// Sum of all `xi` values consumed so far.
    pub fn xi_partial_sum(&self) -> f64 {
        self.xi_partial_sum
    }

    /// Upper bound the stepsize can never exceed: `lambda_1 + sum(xi)` over
    /// the consumed prefix of the schedule.
    pub fn ceiling(&self) -> f64 {
        self.lambda_initial + self.xi_partial_sum
    }

    /// Advances `lambda_n` to `lambda_{n+1}` after iteration `n` (1-based)
    /// produced the pair `z` (base point) and `w` (projected point).
    ///
    /// The relaxed candidate is `lambda_n + xi_n`. When the operator values
    /// differ, the candidate is capped by the curvature ratio
    /// `mu * ‖z - w‖ / ‖F(z) - F(w)‖`; otherwise the relaxed candidate is
    /// taken as is. Returns the new stepsize, which is also stored.
    pub fn update_stepsize(
        &mut self,
        n: u64,
        z: &Vector,
        w: &Vector,
        fz: &Vector,
        fw: &Vector,
    ) -> Result<f64> {
        let xi_n = self.xi.value(n);
        self.xi_partial_sum += xi_n;
        let relaxed = self.lambda + xi_n;
        let df = fz.sub(fw)?.norm();
        let next = if df > 0.0 {
            let dz = z.sub(w)?.norm();
            (self.mu * dz / df).min(relaxed)
        } else {
            relaxed
        };
        self.lambda = next;
        Ok(next)
    }
}
