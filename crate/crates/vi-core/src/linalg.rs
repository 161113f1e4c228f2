//! Dense double-precision vectors with a fixed reduction order.
//!
//! Reductions (`dot`, `norm`) accumulate strictly left to right, one entry at
//! a time. Running the same solve twice therefore visits bit-identical
//! iterates, and iteration counts are reproducible across runs and thread
//! counts. Arithmetic results are not re-validated: a diverging solve can
//! produce non-finite entries, which surface as a non-finite residual rather
//! than an error.

use crate::error::{Error, Result};

/// A vector in `R^n`, guaranteed nonempty and finite at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    /// Takes ownership of `data`, rejecting empty input and non-finite
    /// entries.
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &value) in data.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry { index, value });
            }
        }
        Ok(Self { data })
    }

    /// Copies `entries` into a new vector.
    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    /// A vector of length `dim` with every entry equal to `value`.
    pub fn constant(dim: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; dim])
    }

    /// The zero vector of length `dim`.
    pub fn zeros(dim: usize) -> Result<Self> {
        Self::constant(dim, 0.0)
    }

    /// Wraps data produced by our own arithmetic, skipping validation.
    pub(crate) fn raw(data: Vec<f64>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Euclidean norm, accumulated left to right.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for &x in &self.data {
            acc += x * x;
        }
        acc.sqrt()
    }

    /// Inner product, accumulated left to right.
    pub fn dot(&self, other: &Vector) -> Result<f64> {
        self.check_dim(other)?;
        let mut acc = 0.0;
        for (a, b) in self.data.iter().zip(&other.data) {
            acc += a * b;
        }
        Ok(acc)
    }

    /// Elementwise difference `self - other`.
    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Vector::raw(data))
    }

    /// Scalar multiple `factor * self`.
    pub fn scale(&self, factor: f64) -> Vector {
        Vector::raw(self.data.iter().map(|x| factor * x).collect())
    }

    fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.data[index]
    }
}

/// Returns `a * x + y` elementwise.
pub fn axpy(a: f64, x: &Vector, y: &Vector) -> Result<Vector> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    let data = x
        .as_slice()
        .iter()
        .zip(y.as_slice())
        .map(|(xi, yi)| a * xi + yi)
        .collect();
    Ok(Vector::raw(data))
}
