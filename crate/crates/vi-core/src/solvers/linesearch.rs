//! Backtracking steppers: trial stepsizes shrink geometrically until an
//! acceptance inequality holds.

use crate::error::{Error, Result};
use crate::linalg::{axpy, Vector};
use crate::operators::Operator;
use crate::sets::Projector;

use super::{LinesearchParams, RunStatus, SolverState, SolverStep, StepEvent};

/// What an accepted line search hands back to its caller.
///
/// Besides the accepted stepsize and projected point, the operator values at
/// both ends are included so callers can finish their update without paying
/// for re-evaluations.
#[derive(Debug, Clone)]
pub struct LinesearchOutcome {
    /// Number of rejected trials before acceptance (the exponent `m`).
    pub backtracks: u32,
    /// Accepted stepsize `gamma * l^m`.
    pub stepsize: f64,
    /// Projection of `z - stepsize * F(z)`.
    pub w: Vector,
    /// `F(z)`, evaluated once up front.
    pub fz: Vector,
    /// `F(w)` at the accepted point.
    pub fw: Vector,
}

/// Finds the smallest `m >= 0` such that the stepsize `s = gamma * l^m`
/// satisfies `s * ‖F(z) - F(w)‖ <= mu * ‖z - w‖`, where
/// `w = P_C(z - s F(z))` is recomputed for every trial.
///
/// Costs one operator evaluation up front, then one projection and one
/// evaluation per trial; `m` backtracks means `m + 1` trials. All of it is
/// booked against the supplied counters. Fails with `LinesearchExhausted`
/// once `max_backtracks` backtracks have been rejected.
pub fn armijo_linesearch(
    z: &Vector,
    operator: &Operator<'_>,
    projector: &Projector<'_>,
    gamma: f64,
    l: f64,
    mu: f64,
    max_backtracks: u32,
) -> Result<LinesearchOutcome> {
    let params = LinesearchParams {
        gamma,
        l,
        mu,
        max_backtracks,
    };
    params.validate()?;

    let fz = operator.eval(z)?;
    let mut stepsize = gamma;
    for backtracks in 0..=max_backtracks {
        let shifted = axpy(-stepsize, &fz, z)?;
        let w = projector.project(&shifted)?;
        let fw = operator.eval(&w)?;
        let lhs = stepsize * fz.sub(&fw)?.norm();
        let rhs = mu * z.sub(&w)?.norm();
        if lhs <= rhs {
            return Ok(LinesearchOutcome {
                backtracks,
                stepsize,
                w,
                fz,
                fw,
            });
        }
        stepsize *= l;
    }
    Err(Error::LinesearchExhausted { max_backtracks })
}

/// Forward-backward-forward stepper with a backtracking stepsize.
///
/// Identical correcting move to the self-adaptive stepper, but each
/// iteration searches for its stepsize from scratch, re-projecting on every
/// trial. Per iteration this costs `m + 1` projections and `m + 2` operator
/// evaluations, where `m` is the number of backtracks.
pub struct TsengLinesearchStep {
    params: LinesearchParams,
}

impl TsengLinesearchStep {
    pub fn new(params: LinesearchParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }
}

impl SolverStep for TsengLinesearchStep {
    fn step(
        &mut self,
        state: &mut SolverState,
        operator: &Operator<'_>,
        projector: &Projector<'_>,
    ) -> Result<StepEvent> {
        let p = &self.params;
        let search = match armijo_linesearch(
            &state.z, operator, projector, p.gamma, p.l, p.mu, p.max_backtracks,
        ) {
            Ok(outcome) => outcome,
            Err(Error::LinesearchExhausted { .. }) => {
                return Ok(StepEvent::Halted {
                    status: RunStatus::LinesearchExhausted,
                })
            }
            Err(other) => return Err(other),
        };

        let offset = state.z.sub(&search.w)?;
        let e_n = offset.norm() / search.stepsize;
        let correction = search.fz.sub(&search.fw)?;
        let next_z = axpy(search.stepsize, &correction, &search.w)?;

        state.z = next_z;
        state.w = Some(search.w);
        state.lambda = search.stepsize;
        state.n += 1;
        Ok(StepEvent::Advanced {
            e_n,
            lambda_n: search.stepsize,
        })
    }
}

/// Two-projection stepper with a backtracking predictor.
///
/// The line search produces a predictor `w_n`; the iterate then moves by
/// projecting `z_n - t_n F(w_n)` onto the feasible set, where the travel
/// `t_n = <F(w_n), z_n - w_n> / ‖F(w_n)‖^2`. A vanishing `F(w_n)` certifies
/// `w_n` as an exact solution and stops the run.
pub struct IusemStep {
    params: LinesearchParams,
}

impl IusemStep {
    pub fn new(params: LinesearchParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }
}

impl SolverStep for IusemStep {
    fn step(
        &mut self,
        state: &mut SolverState,
        operator: &Operator<'_>,
        projector: &Projector<'_>,
    ) -> Result<StepEvent> {
        let p = &self.params;
        let search = match armijo_linesearch(
            &state.z, operator, projector, p.gamma, p.l, p.mu, p.max_backtracks,
        ) {
            Ok(outcome) => outcome,
            Err(Error::LinesearchExhausted { .. }) => {
                return Ok(StepEvent::Halted {
                    status: RunStatus::LinesearchExhausted,
                })
            }
            Err(other) => return Err(other),
        };

        let offset = state.z.sub(&search.w)?;
        let e_n = offset.norm() / search.stepsize;
        let denominator = search.fw.dot(&search.fw)?;
        if denominator == 0.0 {
            // The operator vanishes at the predictor, which therefore solves
            // the problem exactly; report a zero residual for it.
            state.z = search.w.clone();
            state.w = Some(search.w);
            state.lambda = search.stepsize;
            return Ok(StepEvent::Terminated {
                status: RunStatus::Converged,
                e_n: 0.0,
                lambda_n: search.stepsize,
            });
        }
        let travel = search.fw.dot(&offset)? / denominator;
        let target = axpy(-travel, &search.fw, &state.z)?;
        let next_z = projector.project(&target)?;

        state.z = next_z;
        state.w = Some(search.w);
        state.lambda = search.stepsize;
        state.n += 1;
        Ok(StepEvent::Advanced {
            e_n,
            lambda_n: search.stepsize,
        })
    }
}
