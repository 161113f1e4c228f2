//! The self-adaptive forward-backward-forward stepper.

use crate::error::{Error, Result};
use crate::linalg::axpy;
use crate::operators::Operator;
use crate::sets::Projector;
use crate::stepsize::StepsizeController;

use super::{AdaptiveParams, RunStatus, SolverState, SolverStep, StepEvent, STEPSIZE_FLOOR};

/// One iteration: project `z_n - lambda_n F(z_n)` to get `w_n`, move to
/// `w_n + lambda_n (F(z_n) - F(w_n))`, then adapt the stepsize from the
/// observed pair. Costs exactly one projection and two operator evaluations,
/// except on the iteration where the exact-termination test fires, which
/// skips the second evaluation.
pub struct TsengAdaptiveStep {
    control: StepsizeController,
    epsilon: f64,
}

impl TsengAdaptiveStep {
    pub fn new(params: AdaptiveParams, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(Error::Negative {
                name: "epsilon",
                value: epsilon,
            });
        }
        Ok(Self {
            control: StepsizeController::new(params.mu, params.lambda1, params.xi)?,
            epsilon,
        })
    }

    /// Read access to the stepsize state, mainly for inspecting the ceiling.
    pub fn controller(&self) -> &StepsizeController {
        &self.control
    }
}

impl SolverStep for TsengAdaptiveStep {
    fn step(
        &mut self,
        state: &mut SolverState,
        operator: &Operator<'_>,
        projector: &Projector<'_>,
    ) -> Result<StepEvent> {
        let lambda_n = self.control.lambda();
        let fz = operator.eval(&state.z)?;
        let shifted = axpy(-lambda_n, &fz, &state.z)?;
        let w = projector.project(&shifted)?;
        let offset = state.z.sub(&w)?;
        let distance = offset.norm();
        let e_n = distance / lambda_n;

        // Exact-termination test: the iterate is a fixed point of the
        // projected step up to epsilon, certified without touching F again.
        if distance <= lambda_n * self.epsilon {
            state.w = Some(w);
            state.lambda = lambda_n;
            return Ok(StepEvent::Terminated {
                status: RunStatus::Converged,
                e_n,
                lambda_n,
            });
        }

        let fw = operator.eval(&w)?;
        let correction = fz.sub(&fw)?;
        let next_z = axpy(lambda_n, &correction, &w)?;
        let next_lambda = self.control.update_stepsize(state.n, &state.z, &w, &fz, &fw)?;

        state.z = next_z;
        state.w = Some(w);
        state.lambda = next_lambda;
        state.n += 1;

        if next_lambda < STEPSIZE_FLOOR {
            return Ok(StepEvent::Terminated {
                status: RunStatus::StepsizeUnderflow,
                e_n,
                lambda_n,
            });
        }
        Ok(StepEvent::Advanced { e_n, lambda_n })
    }
}
