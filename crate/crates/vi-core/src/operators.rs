//! Operators defining the inequality problem, plus evaluation counting.
//!
//! A problem asks for a point `z*` in a feasible set `C` such that
//! `<F(z*), w - z*> >= 0` for every `w` in `C`. This module supplies the `F`
//! side: a small trait for vector-to-vector maps, two concrete operators, and
//! a counting wrapper so solvers can report exactly how many evaluations a
//! run consumed.

use std::cell::Cell;

use crate::error::{Error, Result};
use crate::linalg::Vector;

/// A map from `R^n` to `R^n`.
///
/// Implementations must be deterministic: equal inputs produce bit-identical
/// outputs. Any closure `Fn(&Vector) -> Result<Vector>` qualifies via the
/// blanket impl, which keeps one-off test problems cheap to write.
pub trait VectorMap {
    fn apply(&self, z: &Vector) -> Result<Vector>;
}

impl<F> VectorMap for F
where
    F: Fn(&Vector) -> Result<Vector>,
{
    fn apply(&self, z: &Vector) -> Result<Vector> {
        self(z)
    }
}

/// The operator of the `example41` benchmark problem:
/// `F(z) = (‖z‖ + 1/(‖z‖ + theta)) · z` with `theta > 0`.
///
/// The map is quasimonotone but not monotone, has no Lipschitz constant valid
/// on all of `R^n`, and vanishes only at the origin, which is the problem's
/// unique solution. Larger `theta` flattens the radial coefficient near zero.
#[derive(Debug, Clone)]
pub struct Example41 {
    theta: f64,
}

impl Example41 {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(Error::NonPositive {
                name: "theta",
                value: theta,
            });
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Radial coefficient `r + 1/(r + theta)` applied to a vector of norm `r`.
    pub fn coefficient(&self, r: f64) -> f64 {
        r + 1.0 / (r + self.theta)
    }
}

impl VectorMap for Example41 {
    fn apply(&self, z: &Vector) -> Result<Vector> {
        Ok(z.scale(self.coefficient(z.norm())))
    }
}

/// An affine map `F(z) = M z + q` with `M` stored row-major.
///
/// Each output entry is a left-to-right dot product of one row with `z`, so
/// evaluations are bitwise reproducible.
#[derive(Debug, Clone)]
pub struct AffineOperator {
    dim: usize,
    matrix: Vec<f64>,
    shift: Vector,
}

impl AffineOperator {
    /// Builds the map from square row data and a shift of matching length.
    pub fn new(rows: Vec<Vec<f64>>, shift: Vector) -> Result<Self> {
        let dim = shift.dim();
        if rows.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: rows.len(),
            });
        }
        let mut matrix = Vec::with_capacity(dim * dim);
        for row in &rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            for (index, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    return Err(Error::NonFiniteEntry { index, value });
                }
            }
            matrix.extend_from_slice(row);
        }
        Ok(Self { dim, matrix, shift })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl VectorMap for AffineOperator {
    fn apply(&self, z: &Vector) -> Result<Vector> {
        if z.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let row = &self.matrix[i * self.dim..(i + 1) * self.dim];
            let mut acc = 0.0;
            for (m, x) in row.iter().zip(z.as_slice()) {
                acc += m * x;
            }
            out.push(acc + self.shift[i]);
        }
        Ok(Vector::raw(out))
    }
}

/// Wraps a map and counts successful evaluations.
///
/// Solvers receive the wrapper rather than the bare map, so every `F`
/// evaluation a run performs, line-search trials included, lands in one
/// counter that the run report exposes verbatim.
pub struct Operator<'a> {
    map: &'a dyn VectorMap,
    evals: Cell<u64>,
}

impl<'a> Operator<'a> {
    pub fn new(map: &'a dyn VectorMap) -> Self {
        Self {
            map,
            evals: Cell::new(0),
        }
    }

    /// Applies the wrapped map and bumps the counter by exactly one.
    pub fn eval(&self, z: &Vector) -> Result<Vector> {
        let value = self.map.apply(z)?;
        self.evals.set(self.evals.get() + 1);
        Ok(value)
    }

    /// Number of successful evaluations so far.
    pub fn count(&self) -> u64 {
        self.evals.get()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example41_requires_positive_theta() {
        assert!(Example41::new(0.0).is_err());
        assert!(Example41::new(-1.0).is_err());
        assert!(Example41::new(f64::NAN).is_err());
        assert!(Example41::new(5.0).is_ok());
    }

    #[test]
    fn example41_scales_radially() {
        // ‖(3,4)‖ = 5, coefficient 5 + 1/10 = 5.1, image (15.3, 20.4).
        let op = Example41::new(5.0).unwrap();
        let z = Vector::from_slice(&[3.0, 4.0]).unwrap();
        let fz = op.apply(&z).unwrap();
        assert!((fz[0] - 15.3).abs() < 1e-12);
        assert!((fz[1] - 20.4).abs() < 1e-12);
    }

    #[test]
    fn example41_vanishes_only_at_origin() {
        let op = Example41::new(1.0).unwrap();
        let zero = Vector::zeros(3).unwrap();
        assert_eq!(op.apply(&zero).unwrap().norm(), 0.0);
        let z = Vector::from_slice(&[1e-9, 0.0, 0.0]).unwrap();
        assert!(op.apply(&z).unwrap().norm() > 0.0);
    }

    #[test]
    fn example41_coefficient_increases_for_theta_at_least_one() {
        for theta in [1.0, 5.0, 10.0] {
            let op = Example41::new(theta).unwrap();
            let mut grid = Vec::new();
            let mut r = 0.0;
            while r <= 10.0 {
                grid.push(op.coefficient(r));
                r += 0.25;
            }
            for pair in grid.windows(2) {
                assert!(
                    pair[0] < pair[1],
                    "coefficient not increasing at theta={theta}"
                );
            }
        }
    }

    #[test]
    fn example41_image_norm_matches_coefficient() {
        let op = Example41::new(1.0).unwrap();
        for entries in [&[0.3, -0.4, 1.2][..], &[2.0, 0.0, 0.0][..]] {
            let z = Vector::from_slice(entries).unwrap();
            let r = z.norm();
            let expected = op.coefficient(r) * r;
            let got = op.apply(&z).unwrap().norm();
            assert!((got - expected).abs() <= 1e-12 * expected.max(1.0));
        }
    }

    #[test]
    fn affine_operator_applies_rows_in_order() {
        let rows = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let shift = Vector::from_slice(&[10.0, 20.0]).unwrap();
        let op = AffineOperator::new(rows, shift).unwrap();
        let z = Vector::from_slice(&[1.0, 1.0]).unwrap();
        let fz = op.apply(&z).unwrap();
        assert_eq!(fz.as_slice(), &[13.0, 27.0]);
    }

    #[test]
    fn affine_operator_rejects_ragged_rows() {
        let rows = vec![vec![1.0, 2.0], vec![3.0]];
        let shift = Vector::from_slice(&[0.0, 0.0]).unwrap();
        assert!(AffineOperator::new(rows, shift).is_err());
    }

    #[test]
    fn counter_tracks_each_evaluation() {
        let map = Example41::new(1.0).unwrap();
        let op = Operator::new(&map);
        let z = Vector::from_slice(&[1.0, 2.0]).unwrap();
        assert_eq!(op.count(), 0);
        op.eval(&z).unwrap();
        op.eval(&z).unwrap();
        assert_eq!(op.count(), 2);
    }

    #[test]
    fn closures_implement_the_map_trait() {
        let shift = |z: &Vector| -> Result<Vector> { Ok(z.scale(2.0)) };
        let op = Operator::new(&shift);
        let z = Vector::from_slice(&[1.5]).unwrap();
        assert_eq!(op.eval(&z).unwrap().as_slice(), &[3.0]);
        assert_eq!(op.count(), 1);
    }
}
