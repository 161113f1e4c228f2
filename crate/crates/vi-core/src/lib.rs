//! Projection-based solvers for finite-dimensional variational inequality
//! problems: find a point `z*` in a closed convex set `C` with
//! `<F(z*), w - z*> >= 0` for every `w` in `C`.
//!
//! The crate provides feasible sets with closed-form projections, operator
//! and projection counting, five solvers sharing one driver, and
//! per-iteration history traces. The headline method adapts its stepsize
//! from observed curvature, so it needs neither a Lipschitz constant nor a
//! line search, and it tolerates operators that are merely quasimonotone.
//!
//! All float reductions run in a fixed left-to-right order: repeating a
//! solve reproduces its iterates bit for bit, which makes iteration counts
//! meaningful measurements.
//!
//! ```
//! use vi_core::{solve, BoxSet, Example41, FeasibleSet, Method, SolverConfig, Vector};
//!
//! let set = FeasibleSet::from(BoxSet::example41(50)?);
//! let operator = Example41::new(1.0)?;
//! let start = Vector::constant(50, 1.0)?;
//! let method = Method::default_for_tag("tseng-adaptive")?;
//!
//! let report = solve(&operator, &set, &method, &SolverConfig::default(), &start)?;
//! assert_eq!(report.status, vi_core::RunStatus::Converged);
//! assert!(report.final_residual < 1e-8);
//! # Ok::<(), vi_core::Error>(())
//! ```

// Negated comparisons in validation code are deliberate: `!(x > 0.0)` is
// true for NaN, while the suggested `x <= 0.0` is not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;

pub mod diagnostics;
pub mod linalg;
pub mod operators;
pub mod sets;
pub mod solvers;
pub mod stepsize;

pub use diagnostics::{compute_en, HistoryTrace, TraceRow};
pub use error::{Error, Result};
pub use linalg::{axpy, Vector};
pub use operators::{AffineOperator, Example41, Operator, VectorMap};
pub use sets::{natural_residual, BallSet, BoxSet, FeasibleSet, HalfSpace, Projector};
pub use solvers::{
    armijo_linesearch, solve, AdaptiveParams, FixedParams, IusemStep, LinesearchOutcome,
    LinesearchParams, Method, RunReport, RunStatus, SolverConfig, SolverState, SolverStep,
    StepEvent, SubgradExtragradStep, TsengAdaptiveStep, TsengFixedStep, TsengLinesearchStep,
    ALGORITHM_TAGS,
};
pub use stepsize::{StepsizeController, XiSchedule};

// The guide's code blocks compile and run as doc-tests, keeping the book in
// step with the library. One item per chapter so a failure names its source.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/inequality-problems.md")]
    pub struct InequalityProblems;
    #[doc = include_str!("../../../book/src/feasible-sets.md")]
    pub struct FeasibleSets;
    #[doc = include_str!("../../../book/src/operators.md")]
    pub struct Operators;
    #[doc = include_str!("../../../book/src/solvers.md")]
    pub struct Solvers;
    #[doc = include_str!("../../../book/src/adaptive-stepsizes.md")]
    pub struct AdaptiveStepsizes;
}
