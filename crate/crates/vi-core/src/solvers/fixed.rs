//! Constant-stepsize steppers.

use crate::error::{Error, Result};
use crate::linalg::axpy;
use crate::operators::Operator;
use crate::sets::{FeasibleSet, HalfSpace, Projector};

use super::{FixedParams, RunStatus, SolverState, SolverStep, StepEvent};

/// Forward-backward-forward stepper with a constant stepsize.
///
/// Performs exactly the move of the self-adaptive stepper, including the
/// exact-termination test, with the stepsize update suppressed. One
/// projection and two operator evaluations per iteration.
pub struct TsengFixedStep {
    lambda: f64,
    epsilon: f64,
}

impl TsengFixedStep {
    pub fn new(params: FixedParams, epsilon: f64) -> Result<Self> {
        params.validate()?;
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(Error::Negative {
                name: "epsilon",
                value: epsilon,
            });
        }
        Ok(Self {
            lambda: params.lambda,
            epsilon,
        })
    }
}

impl SolverStep for TsengFixedStep {
    fn step(
        &mut self,
        state: &mut SolverState,
        operator: &Operator<'_>,
        projector: &Projector<'_>,
    ) -> Result<StepEvent> {
        let lambda = self.lambda;
        let fz = operator.eval(&state.z)?;
        let shifted = axpy(-lambda, &fz, &state.z)?;
        let w = projector.project(&shifted)?;
        let offset = state.z.sub(&w)?;
        let distance = offset.norm();
        let e_n = distance / lambda;

        if distance <= lambda * self.epsilon {
            state.w = Some(w);
            state.lambda = lambda;
            return Ok(StepEvent::Terminated {
                status: RunStatus::Converged,
                e_n,
                lambda_n: lambda,
            });
        }

        let fw = operator.eval(&w)?;
        let correction = fz.sub(&fw)?;
        let next_z = axpy(lambda, &correction, &w)?;

        state.z = next_z;
        state.w = Some(w);
        state.lambda = lambda;
        state.n += 1;
        Ok(StepEvent::Advanced {
            e_n,
            lambda_n: lambda,
        })
    }
}

/// Extragradient stepper with a half-space second projection.
///
/// The first projection produces `w_n` from `z_n - lambda F(z_n)`. The
/// iterate then moves to the projection of `z_n - lambda F(w_n)` onto the
/// half-space whose boundary passes through `w_n` with outward normal
/// `z_n - lambda F(z_n) - w_n`. That normal vanishes exactly when the
/// shifted point was already feasible; the half-space then degenerates to
/// the whole space and the second projection is the identity, which still
/// counts as a projection. Two projections and two evaluations per
/// iteration.
pub struct SubgradExtragradStep {
    lambda: f64,
}

impl SubgradExtragradStep {
    pub fn new(params: FixedParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            lambda: params.lambda,
        })
    }
}

impl SolverStep for SubgradExtragradStep {
    fn step(
        &mut self,
        state: &mut SolverState,
        operator: &Operator<'_>,
        projector: &Projector<'_>,
    ) -> Result<StepEvent> {
        let lambda = self.lambda;
        let fz = operator.eval(&state.z)?;
        let shifted = axpy(-lambda, &fz, &state.z)?;
        let w = projector.project(&shifted)?;
        let offset = state.z.sub(&w)?;
        let e_n = offset.norm() / lambda;

        let fw = operator.eval(&w)?;
        let normal = shifted.sub(&w)?;
        let target = axpy(-lambda, &fw, &state.z)?;
        let next_z = if normal.norm() == 0.0 {
            projector.note_identity_projection();
            target
        } else {
            let halfspace = FeasibleSet::HalfSpace(HalfSpace::new(normal, w.clone())?);
            projector.project_onto(&halfspace, &target)?
        };

        state.z = next_z;
        state.w = Some(w);
        state.lambda = lambda;
        state.n += 1;
        Ok(StepEvent::Advanced {
            e_n,
            lambda_n: lambda,
        })
    }
}
