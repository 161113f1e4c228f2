//! Projection-type iterative solvers.
//!
//! All five methods share one loop shape. From the current iterate `z_n`
//! they form a projected trial point `w_n`, take a correcting move, and stop
//! once the scaled residual `E_n = ‖z_n - w_n‖ / lambda_n` falls below the
//! configured tolerance. They differ in how the stepsize `lambda_n` is
//! found and in what the correcting move is:
//!
//! * `tseng-adaptive` updates `z` through `w_n + lambda_n (F(z_n) - F(w_n))`
//!   and adapts `lambda_n` from the observed curvature ratio, never
//!   evaluating `F` more than twice per iteration and never projecting more
//!   than once.
//! * `tseng-linesearch` takes the same correcting move but finds `lambda_n`
//!   by backtracking, re-projecting on every trial.
//! * `tseng-fixed` is the same move with a constant stepsize.
//! * `subgrad-extragrad` projects a second time onto a half-space built from
//!   the first projection.
//! * `iusem` backtracks for a predictor point, then projects the original
//!   iterate along the operator value at that point.
//!
//! Every operator evaluation and every projection a solver performs goes
//! through counting wrappers, so reported work is exact, line-search trials
//! included.

mod adaptive;
mod fixed;
mod linesearch;

use std::time::Instant;

use crate::diagnostics::HistoryTrace;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::operators::{Operator, VectorMap};
use crate::sets::{FeasibleSet, Projector};
use crate::stepsize::{StepsizeController, XiSchedule};

pub use adaptive::TsengAdaptiveStep;
pub use fixed::{SubgradExtragradStep, TsengFixedStep};
pub use linesearch::{armijo_linesearch, IusemStep, LinesearchOutcome, TsengLinesearchStep};

/// Stepsizes below this floor terminate a run as degenerate.
pub(crate) const STEPSIZE_FLOOR: f64 = 1e-300;

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// A stopping rule certified the iterate: either the scaled residual
    /// fell below the tolerance or a solver-specific exact criterion fired.
    Converged,
    /// The iteration budget ran out first.
    MaxIterReached,
    /// The adaptive stepsize collapsed below a representable working range.
    StepsizeUnderflow,
    /// Reserved for methods that divide by a measured quantity; current
    /// solvers guard those divisions and stop through other statuses.
    ZeroDenominator,
    /// A backtracking search ran out of trials.
    LinesearchExhausted,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Converged => "converged",
            RunStatus::MaxIterReached => "max-iter-reached",
            RunStatus::StepsizeUnderflow => "stepsize-underflow",
            RunStatus::ZeroDenominator => "zero-denominator",
            RunStatus::LinesearchExhausted => "linesearch-exhausted",
        }
    }
}

/// Run-level options shared by every method.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Exact-termination threshold for methods with a built-in certificate
    /// test (`tseng-adaptive`, `tseng-fixed`): the run stops when
    /// `‖z_n - w_n‖ <= lambda_n * epsilon`. Zero demands an exact fixed
    /// point and in floating point effectively disables the test.
    pub epsilon: f64,
    /// Residual stopping threshold: stop once `E_n < tolerance`.
    pub tolerance: f64,
    /// Iteration budget.
    pub max_iter: u64,
    /// Record a per-iteration history trace.
    pub record_history: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.0,
            tolerance: 1e-8,
            max_iter: 5000,
            record_history: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0) || !self.epsilon.is_finite() {
            return Err(Error::Negative {
                name: "epsilon",
                value: self.epsilon,
            });
        }
        if !(self.tolerance >= 0.0) || !self.tolerance.is_finite() {
            return Err(Error::Negative {
                name: "tolerance",
                value: self.tolerance,
            });
        }
        if self.max_iter == 0 {
            return Err(Error::ZeroCount { name: "max_iter" });
        }
        Ok(())
    }
}

/// Parameters of the self-adaptive method.
#[derive(Debug, Clone)]
pub struct AdaptiveParams {
    /// Curvature safety factor in `(0, 1)`.
    pub mu: f64,
    /// Initial stepsize.
    pub lambda1: f64,
    /// Summable per-iteration stepsize increments.
    pub xi: XiSchedule,
}

impl Default for AdaptiveParams {
    fn default() -> Self {
        Self {
            mu: 0.3,
            lambda1: 0.01,
            xi: XiSchedule::PowerLaw { exponent: 1.1 },
        }
    }
}

impl AdaptiveParams {
    /// Runs the same checks the solver applies when it starts.
    pub fn validate(&self) -> Result<()> {
        StepsizeController::new(self.mu, self.lambda1, self.xi.clone()).map(|_| ())
    }
}

/// Parameters of the backtracking methods.
#[derive(Debug, Clone)]
pub struct LinesearchParams {
    /// First trial stepsize.
    pub gamma: f64,
    /// Backtracking shrink factor in `(0, 1)`.
    pub l: f64,
    /// Acceptance factor in `(0, 1)`.
    pub mu: f64,
    /// Trial budget per iteration; `m` backtracks means `m + 1` trials.
    pub max_backtracks: u32,
}

impl Default for LinesearchParams {
    fn default() -> Self {
        Self {
            gamma: 0.1,
            l: 0.5,
            mu: 0.8,
            max_backtracks: 100,
        }
    }
}

impl LinesearchParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::NonPositive {
                name: "gamma",
                value: self.gamma,
            });
        }
        if !(self.l > 0.0 && self.l < 1.0) {
            return Err(Error::NotInUnitInterval {
                name: "l",
                value: self.l,
            });
        }
        if !(self.mu > 0.0 && self.mu < 1.0) {
            return Err(Error::NotInUnitInterval {
                name: "mu",
                value: self.mu,
            });
        }
        Ok(())
    }
}

/// Parameters of the constant-stepsize methods.
#[derive(Debug, Clone)]
pub struct FixedParams {
    pub lambda: f64,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self { lambda: 0.01 }
    }
}

impl FixedParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::NonPositive {
                name: "lambda",
                value: self.lambda,
            });
        }
        Ok(())
    }
}

/// Tags accepted on the command line and in benchmark spec files, in the
/// order `list-algs` reports them.
pub const ALGORITHM_TAGS: [&str; 5] = [
    "tseng-adaptive",
    "tseng-linesearch",
    "tseng-fixed",
    "subgrad-extragrad",
    "iusem",
];

/// A solver choice bundled with its parameters.
#[derive(Debug, Clone)]
pub enum Method {
    TsengAdaptive(AdaptiveParams),
    TsengLinesearch(LinesearchParams),
    TsengFixed(FixedParams),
    SubgradExtragrad(FixedParams),
    Iusem(LinesearchParams),
}

impl Method {
    /// Stable identifier used by the CLI and in benchmark outputs.
    pub fn tag(&self) -> &'static str {
        match self {
            Method::TsengAdaptive(_) => "tseng-adaptive",
            Method::TsengLinesearch(_) => "tseng-linesearch",
            Method::TsengFixed(_) => "tseng-fixed",
            Method::SubgradExtragrad(_) => "subgrad-extragrad",
            Method::Iusem(_) => "iusem",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            Method::TsengAdaptive(_) => {
                "forward-backward-forward splitting, self-adaptive stepsize"
            }
            Method::TsengLinesearch(_) => {
                "forward-backward-forward splitting, backtracking stepsize"
            }
            Method::TsengFixed(_) => "forward-backward-forward splitting, constant stepsize",
            Method::SubgradExtragrad(_) => "extragradient with a half-space second projection",
            Method::Iusem(_) => "two-projection method with a backtracking predictor",
        }
    }

    /// The method with default parameters for a tag, or an error naming the
    /// valid tags.
    pub fn default_for_tag(tag: &str) -> Result<Method> {
        match tag {
            "tseng-adaptive" => Ok(Method::TsengAdaptive(AdaptiveParams::default())),
            "tseng-linesearch" => Ok(Method::TsengLinesearch(LinesearchParams::default())),
            "tseng-fixed" => Ok(Method::TsengFixed(FixedParams::default())),
            "subgrad-extragrad" => Ok(Method::SubgradExtragrad(FixedParams::default())),
            "iusem" => Ok(Method::Iusem(LinesearchParams::default())),
            _ => Err(Error::UnknownAlgorithm {
                tag: tag.to_string(),
                valid: ALGORITHM_TAGS.join(", "),
            }),
        }
    }

    /// Checks the bundled parameters without running anything.
    pub fn validate(&self) -> Result<()> {
        match self {
            Method::TsengAdaptive(p) => p.validate(),
            Method::TsengLinesearch(p) | Method::Iusem(p) => p.validate(),
            Method::TsengFixed(p) | Method::SubgradExtragrad(p) => p.validate(),
        }
    }

    /// Stepsize in effect before the first iteration, used to seed state.
    pub fn initial_lambda(&self) -> f64 {
        match self {
            Method::TsengAdaptive(p) => p.lambda1,
            Method::TsengLinesearch(p) | Method::Iusem(p) => p.gamma,
            Method::TsengFixed(p) | Method::SubgradExtragrad(p) => p.lambda,
        }
    }

    pub(crate) fn build_stepper(&self, epsilon: f64) -> Result<Box<dyn SolverStep>> {
        Ok(match self {
            Method::TsengAdaptive(p) => Box::new(TsengAdaptiveStep::new(p.clone(), epsilon)?),
            Method::TsengLinesearch(p) => Box::new(TsengLinesearchStep::new(p.clone())?),
            Method::TsengFixed(p) => Box::new(TsengFixedStep::new(p.clone(), epsilon)?),
            Method::SubgradExtragrad(p) => Box::new(SubgradExtragradStep::new(p.clone())?),
            Method::Iusem(p) => Box::new(IusemStep::new(p.clone())?),
        })
    }
}

/// Mutable position of a solve: the iterate, the last projected point, and
/// the stepsize in effect.
#[derive(Debug, Clone)]
pub struct SolverState {
    pub(crate) n: u64,
    pub(crate) z: Vector,
    pub(crate) w: Option<Vector>,
    pub(crate) lambda: f64,
}

impl SolverState {
    /// Fresh state at `z1` with the stepsize a method starts from.
    pub fn new(z1: Vector, lambda1: f64) -> Result<Self> {
        if !(lambda1 > 0.0) || !lambda1.is_finite() {
            return Err(Error::NonPositive {
                name: "lambda1",
                value: lambda1,
            });
        }
        Ok(Self {
            n: 1,
            z: z1,
            w: None,
            lambda: lambda1,
        })
    }

    /// 1-based index of the next iteration to execute.
    pub fn iteration(&self) -> u64 {
        self.n
    }

    pub fn z(&self) -> &Vector {
        &self.z
    }

    /// Last projected point, absent before the first step.
    pub fn w(&self) -> Option<&Vector> {
        self.w.as_ref()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Outcome of one stepper invocation.
#[derive(Debug, Clone, PartialEq)]
pub enum StepEvent {
    /// The iteration completed and the state advanced.
    Advanced { e_n: f64, lambda_n: f64 },
    /// The iteration completed and certified a stop; `e_n` and `lambda_n`
    /// describe the final iteration.
    Terminated {
        status: RunStatus,
        e_n: f64,
        lambda_n: f64,
    },
    /// The iteration could not complete; no residual is available.
    Halted { status: RunStatus },
}

/// One iteration of a projection-type method.
///
/// Implementations read `state.z`, perform their projections and operator
/// evaluations through the supplied counting wrappers, and advance the state
/// in place.
pub trait SolverStep {
    fn step(
        &mut self,
        state: &mut SolverState,
        operator: &Operator<'_>,
        projector: &Projector<'_>,
    ) -> Result<StepEvent>;
}

/// Everything a finished run reports.
///
/// `final_z` is the last projected point, which is always feasible. On a
/// converged run its scaled residual is below the configured tolerance.
/// `final_residual` is `E` at the last completed iteration, `NaN` if none
/// completed. Counters come verbatim from the counting wrappers.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub status: RunStatus,
    pub iterations: u64,
    pub num_projections: u64,
    pub num_evals: u64,
    pub wall_time_seconds: f64,
    pub final_z: Vector,
    pub final_residual: f64,
    pub history: Option<HistoryTrace>,
}

/// Runs `method` on the problem `(map, set)` from `z1` until a stopping rule
/// fires or the iteration budget is spent.
///
/// Numerical trouble never escapes as an error: divergence or stagnation end
/// in a report whose status says what happened. Errors are reserved for
/// invalid configuration or mismatched dimensions. Wall time covers the
/// iteration loop only, not problem setup.
pub fn solve(
    map: &dyn VectorMap,
    set: &FeasibleSet,
    method: &Method,
    config: &SolverConfig,
    z1: &Vector,
) -> Result<RunReport> {
    config.validate()?;
    if z1.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: z1.dim(),
        });
    }
    let operator = Operator::new(map);
    let projector = Projector::new(set);
    let mut stepper = method.build_stepper(config.epsilon)?;
    let mut state = SolverState::new(z1.clone(), method.initial_lambda())?;
    let mut history = config.record_history.then(HistoryTrace::new);

    let mut status = RunStatus::MaxIterReached;
    let mut iterations = config.max_iter;
    let mut final_residual = f64::NAN;

    let clock = Instant::now();
    for n in 1..=config.max_iter {
        match stepper.step(&mut state, &operator, &projector)? {
            StepEvent::Advanced { e_n, lambda_n } => {
                if let Some(trace) = history.as_mut() {
                    trace.append(n, e_n, lambda_n, clock.elapsed().as_secs_f64())?;
                }
                final_residual = e_n;
                if e_n < config.tolerance {
                    status = RunStatus::Converged;
                    iterations = n;
                    break;
                }
            }
            StepEvent::Terminated {
                status: stop,
                e_n,
                lambda_n,
            } => {
                if let Some(trace) = history.as_mut() {
                    trace.append(n, e_n, lambda_n, clock.elapsed().as_secs_f64())?;
                }
                final_residual = e_n;
                status = stop;
                iterations = n;
                break;
            }
            StepEvent::Halted { status: stop } => {
                status = stop;
                iterations = n;
                break;
            }
        }
    }
    let wall_time_seconds = clock.elapsed().as_secs_f64();

    let final_z = match state.w {
        Some(ref w) => w.clone(),
        None => state.z.clone(),
    };
    Ok(RunReport {
        status,
        iterations,
        num_projections: projector.count(),
        num_evals: operator.count(),
        wall_time_seconds,
        final_z,
        final_residual,
        history,
    })
}
