//! Closed convex feasible sets with exact metric projections.
//!
//! Three set shapes are supported: coordinate boxes, Euclidean balls, and
//! half-spaces. Each has a closed-form projection, evaluated with the same
//! left-to-right reductions as the rest of the crate, so projections are
//! bitwise reproducible. A counting wrapper mirrors the one for operators:
//! solvers project through it and the run report exposes the tally.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::linalg::{axpy, Vector};
use crate::operators::Operator;

/// Coordinate box `{ v : lower_i <= v_i <= upper_i }`.
#[derive(Debug, Clone)]
pub struct BoxSet {
    lower: Vector,
    upper: Vector,
}

impl BoxSet {
    /// Requires matching lengths and `lower_i <= upper_i` everywhere.
    pub fn new(lower: Vector, upper: Vector) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch {
                expected: lower.dim(),
                found: upper.dim(),
            });
        }
        for i in 0..lower.dim() {
            if lower[i] > upper[i] {
                return Err(Error::InvalidBounds {
                    index: i,
                    lower: lower[i],
                    upper: upper[i],
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The feasible box of the `example41` benchmark problem: coordinate `j`
    /// (1-based) is confined to `[-1/j, 1/j]`, so the box tightens along the
    /// dimension index. Requires `dim >= 1`.
    pub fn example41(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        let bounds: Vec<f64> = (1..=dim).map(|j| 1.0 / j as f64).collect();
        let lower = Vector::raw(bounds.iter().map(|b| -b).collect());
        let upper = Vector::raw(bounds);
        Ok(Self { lower, upper })
    }

    pub fn lower(&self) -> &Vector {
        &self.lower
    }

    pub fn upper(&self) -> &Vector {
        &self.upper
    }

    fn project(&self, z: &Vector) -> Result<Vector> {
        self.check_dim(z)?;
        let data = z
            .as_slice()
            .iter()
            .zip(self.lower.as_slice())
            .zip(self.upper.as_slice())
            .map(|((&zi, &lo), &hi)| zi.max(lo).min(hi))
            .collect();
        Ok(Vector::raw(data))
    }

    fn contains(&self, z: &Vector, tol: f64) -> bool {
        if z.dim() != self.lower.dim() {
            return false;
        }
        z.as_slice()
            .iter()
            .zip(self.lower.as_slice())
            .zip(self.upper.as_slice())
            .all(|((&zi, &lo), &hi)| zi >= lo - tol && zi <= hi + tol)
    }

    fn check_dim(&self, z: &Vector) -> Result<()> {
        if z.dim() != self.lower.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.lower.dim(),
                found: z.dim(),
            });
        }
        Ok(())
    }
}

/// Euclidean ball `{ v : ‖v - center‖ <= radius }`.
#[derive(Debug, Clone)]
pub struct BallSet {
    center: Vector,
    radius: f64,
}

impl BallSet {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::NonPositive {
                name: "radius",
                value: radius,
            });
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn project(&self, z: &Vector) -> Result<Vector> {
        let offset = z.sub(&self.center)?;
        let dist = offset.norm();
        if dist <= self.radius {
            return Ok(z.clone());
        }
        axpy(self.radius / dist, &offset, &self.center)
    }

    fn contains(&self, z: &Vector, tol: f64) -> bool {
        match z.sub(&self.center) {
            Ok(offset) => offset.norm() <= self.radius + tol,
            Err(_) => false,
        }
    }
}

/// Half-space `{ v : <normal, v - anchor> <= 0 }`.
#[derive(Debug, Clone)]
pub struct HalfSpace {
    normal: Vector,
    anchor: Vector,
}

impl HalfSpace {
    /// Requires a nonzero normal and matching dimensions.
    pub fn new(normal: Vector, anchor: Vector) -> Result<Self> {
        if normal.dim() != anchor.dim() {
            return Err(Error::DimensionMismatch {
                expected: normal.dim(),
                found: anchor.dim(),
            });
        }
        if normal.norm() == 0.0 {
            return Err(Error::ZeroNormal);
        }
        Ok(Self { normal, anchor })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn anchor(&self) -> &Vector {
        &self.anchor
    }

    fn project(&self, z: &Vector) -> Result<Vector> {
        if z.dim() != self.normal.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.normal.dim(),
                found: z.dim(),
            });
        }
        // One subtraction pass can leave an ulp-scale violation behind, so
        // the point is re-projected until it stops moving. That makes the
        // map exactly idempotent: the returned point either sits within the
        // rounding slack or is a bitwise fixed point of the formula. The
        // violation shrinks by a machine-epsilon factor per pass, so two or
        // three passes settle it; the cap only guards termination.
        let mut current = z.clone();
        for _ in 0..16 {
            let mut violation = 0.0;
            let mut magnitude = 0.0;
            let mut norm2 = 0.0;
            for i in 0..current.dim() {
                let term = self.normal[i] * (current[i] - self.anchor[i]);
                violation += term;
                magnitude += term.abs();
                norm2 += self.normal[i] * self.normal[i];
            }
            let slack = 8.0 * (current.dim() as f64 + 1.0) * f64::EPSILON * magnitude;
            if violation <= slack {
                break;
            }
            let next = axpy(-(violation / norm2), &self.normal, &current)?;
            let moved = next
                .as_slice()
                .iter()
                .zip(current.as_slice())
                .any(|(a, b)| a.to_bits() != b.to_bits());
            if !moved {
                break;
            }
            current = next;
        }
        Ok(current)
    }

    fn contains(&self, z: &Vector, tol: f64) -> bool {
        if z.dim() != self.normal.dim() {
            return false;
        }
        match z.sub(&self.anchor) {
            // Signed distance to the boundary plane.
            Ok(offset) => match self.normal.dot(&offset) {
                Ok(violation) => violation / self.normal.norm() <= tol,
                Err(_) => false,
            },
            Err(_) => false,
        }
    }
}

/// A feasible set a solver can project onto.
#[derive(Debug, Clone)]
pub enum FeasibleSet {
    Box(BoxSet),
    Ball(BallSet),
    HalfSpace(HalfSpace),
}

impl FeasibleSet {
    /// One-dimensional interval, a convenience for scalar problems.
    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        let lo = Vector::new(vec![lower])?;
        let hi = Vector::new(vec![upper])?;
        Ok(FeasibleSet::Box(BoxSet::new(lo, hi)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            FeasibleSet::Box(b) => b.lower.dim(),
            FeasibleSet::Ball(b) => b.center.dim(),
            FeasibleSet::HalfSpace(h) => h.normal.dim(),
        }
    }

    /// Metric projection of `z` onto the set.
    ///
    /// The result is the unique closest point of the set. Projections are
    /// idempotent: feeding the output back in returns it unchanged.
    pub fn project(&self, z: &Vector) -> Result<Vector> {
        match self {
            FeasibleSet::Box(b) => b.project(z),
            FeasibleSet::Ball(b) => b.project(z),
            FeasibleSet::HalfSpace(h) => h.project(z),
        }
    }

    /// Membership test with an absolute tolerance on the defining
    /// inequalities (for the ball and half-space, on the distance to the
    /// boundary). Mismatched dimensions yield `false`.
    pub fn contains(&self, z: &Vector, tol: f64) -> bool {
        match self {
            FeasibleSet::Box(b) => b.contains(z, tol),
            FeasibleSet::Ball(b) => b.contains(z, tol),
            FeasibleSet::HalfSpace(h) => h.contains(z, tol),
        }
    }
}

impl From<BoxSet> for FeasibleSet {
    fn from(set: BoxSet) -> Self {
        FeasibleSet::Box(set)
    }
}

impl From<BallSet> for FeasibleSet {
    fn from(set: BallSet) -> Self {
        FeasibleSet::Ball(set)
    }
}

impl From<HalfSpace> for FeasibleSet {
    fn from(set: HalfSpace) -> Self {
        FeasibleSet::HalfSpace(set)
    }
}

/// Counts metric projections applied during a run.
///
/// The wrapper is bound to the run's primary feasible set but can also count
/// projections onto auxiliary sets (solvers that project onto constructed
/// half-spaces use `project_onto`), so the tally covers every projection the
/// run performs.
pub struct Projector<'a> {
    set: &'a FeasibleSet,
    count: Cell<u64>,
}

impl<'a> Projector<'a> {
    pub fn new(set: &'a FeasibleSet) -> Self {
        Self {
            set,
            count: Cell::new(0),
        }
    }

    pub fn set(&self) -> &'a FeasibleSet {
        self.set
    }

    /// Projects onto the primary set.
    pub fn project(&self, z: &Vector) -> Result<Vector> {
        let value = self.set.project(z)?;
        self.count.set(self.count.get() + 1);
        Ok(value)
    }

    /// Projects onto an auxiliary set, still counting the application.
    pub fn project_onto(&self, set: &FeasibleSet, z: &Vector) -> Result<Vector> {
        let value = set.project(z)?;
        self.count.set(self.count.get() + 1);
        Ok(value)
    }

    /// Records a projection that is an identity by construction (a degenerate
    /// auxiliary set equal to the whole space). The application still counts.
    pub fn note_identity_projection(&self) {
        self.count.set(self.count.get() + 1);
    }

    /// Number of projections applied so far.
    pub fn count(&self) -> u64 {
        self.count.get()
    }
}

/// Natural residual `e(z, alpha) = z - P_C(z - alpha * F(z))`.
///
/// Zero exactly at solutions of the inequality problem, for any `alpha > 0`.
/// Costs one operator evaluation and one projection, both booked against the
/// supplied counters.
pub fn natural_residual(
    z: &Vector,
    alpha: f64,
    operator: &Operator<'_>,
    projector: &Projector<'_>,
) -> Result<Vector> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositive {
            name: "alpha",
            value: alpha,
        });
    }
    let fz = operator.eval(z)?;
    let shifted = axpy(-alpha, &fz, z)?;
    let projected = projector.project(&shifted)?;
    z.sub(&projected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec2(a: f64, b: f64) -> Vector {
        Vector::from_slice(&[a, b]).unwrap()
    }

    #[test]
    fn box_projection_clamps_coordinates() {
        let set = BoxSet::new(vec2(-1.0, -1.0), vec2(1.0, 1.0)).unwrap();
        let p = set.project(&vec2(2.0, -0.5)).unwrap();
        assert_eq!(p.as_slice(), &[1.0, -0.5]);
    }

    #[test]
    fn box_rejects_crossed_bounds() {
        let err = BoxSet::new(vec2(0.0, 1.0), vec2(1.0, 0.0)).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidBounds {
                index: 1,
                lower: 1.0,
                upper: 0.0
            }
        );
    }

    #[test]
    fn example41_box_bounds_shrink_harmonically() {
        let set = BoxSet::example41(3).unwrap();
        assert_eq!(set.upper().as_slice(), &[1.0, 0.5, 1.0 / 3.0]);
        assert_eq!(set.lower().as_slice(), &[-1.0, -0.5, -(1.0 / 3.0)]);
        assert!(BoxSet::example41(0).is_err());
    }

    #[test]
    fn ball_projection_is_radial() {
        let set = BallSet::new(vec2(0.0, 0.0), 1.0).unwrap();
        let p = set.project(&vec2(3.0, 4.0)).unwrap();
        assert!((p[0] - 0.6).abs() < 1e-15);
        assert!((p[1] - 0.8).abs() < 1e-15);
        // Interior points are returned unchanged.
        let q = set.project(&vec2(0.1, 0.2)).unwrap();
        assert_eq!(q.as_slice(), &[0.1, 0.2]);
    }

    #[test]
    fn halfspace_projection_removes_violation() {
        let hs = HalfSpace::new(vec2(1.0, 0.0), vec2(0.0, 0.0)).unwrap();
        let p = hs.project(&vec2(2.0, 5.0)).unwrap();
        assert_eq!(p.as_slice(), &[0.0, 5.0]);
        let inside = hs.project(&vec2(-3.0, 1.0)).unwrap();
        assert_eq!(inside.as_slice(), &[-3.0, 1.0]);
    }

    #[test]
    fn halfspace_requires_nonzero_normal() {
        let err = HalfSpace::new(vec2(0.0, 0.0), vec2(0.0, 0.0)).unwrap_err();
        assert_eq!(err, Error::ZeroNormal);
    }

    #[test]
    fn contains_uses_absolute_tolerance() {
        let set = FeasibleSet::interval(-1.0, 1.0).unwrap();
        let just_out = Vector::new(vec![1.0 + 1e-12]).unwrap();
        assert!(set.contains(&just_out, 1e-10));
        assert!(!set.contains(&just_out, 0.0));

        let ball: FeasibleSet = BallSet::new(vec2(0.0, 0.0), 1.0).unwrap().into();
        assert!(ball.contains(&vec2(1.0, 0.0), 0.0));
        assert!(!ball.contains(&vec2(1.0 + 1e-6, 0.0), 1e-9));

        let hs: FeasibleSet = HalfSpace::new(vec2(0.0, 2.0), vec2(0.0, 1.0)).unwrap().into();
        // Signed distance of (0, 2) to the plane y = 1 is 1.
        assert!(!hs.contains(&vec2(0.0, 2.0), 0.5));
        assert!(hs.contains(&vec2(0.0, 2.0), 1.0 + 1e-12));
    }

    #[test]
    fn contains_is_false_on_dimension_mismatch() {
        let set = FeasibleSet::interval(-1.0, 1.0).unwrap();
        assert!(!set.contains(&vec2(0.0, 0.0), 1.0));
    }

    #[test]
    fn projector_counts_all_projection_kinds() {
        let set = FeasibleSet::interval(-1.0, 1.0).unwrap();
        let aux = FeasibleSet::interval(0.0, 2.0).unwrap();
        let proj = Projector::new(&set);
        let z = Vector::new(vec![3.0]).unwrap();
        proj.project(&z).unwrap();
        proj.project_onto(&aux, &z).unwrap();
        proj.note_identity_projection();
        assert_eq!(proj.count(), 3);
    }

    #[test]
    fn natural_residual_on_an_interval() {
        // C = [-1, 1], F(x) = x, z = 2, alpha = 1:
        // P_C(2 - 1 * 2) = 0, so the residual is 2 - 0 = 2.
        let set = FeasibleSet::interval(-1.0, 1.0).unwrap();
        let identity = |z: &Vector| -> Result<Vector> { Ok(z.clone()) };
        let op = Operator::new(&identity);
        let proj = Projector::new(&set);
        let z = Vector::new(vec![2.0]).unwrap();
        let e = natural_residual(&z, 1.0, &op, &proj).unwrap();
        assert_eq!(e.as_slice(), &[2.0]);
        assert_eq!(op.count(), 1);
        assert_eq!(proj.count(), 1);
    }

    #[test]
    fn natural_residual_vanishes_at_solutions() {
        let set = FeasibleSet::interval(-1.0, 1.0).unwrap();
        let shifted = |z: &Vector| -> Result<Vector> { Vector::new(vec![z[0] + 0.5]) };
        let op = Operator::new(&shifted);
        let proj = Projector::new(&set);
        // Solution of VI([-1,1], x + 0.5) is x = -0.5.
        let solution = Vector::new(vec![-0.5]).unwrap();
        let e = natural_residual(&solution, 0.7, &op, &proj).unwrap();
        assert_eq!(e.norm(), 0.0);
    }

    #[test]
    fn natural_residual_rejects_nonpositive_alpha() {
        let set = FeasibleSet::interval(-1.0, 1.0).unwrap();
        let identity = |z: &Vector| -> Result<Vector> { Ok(z.clone()) };
        let op = Operator::new(&identity);
        let proj = Projector::new(&set);
        let z = Vector::new(vec![0.5]).unwrap();
        assert!(natural_residual(&z, 0.0, &op, &proj).is_err());
        assert!(natural_residual(&z, -1.0, &op, &proj).is_err());
    }
}
