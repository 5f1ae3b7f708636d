use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Two points closer than this in the sup norm are treated as identical by
/// every divergence, which then returns exactly zero.
pub const COINCIDENCE_TOL: f64 = 1e-14;

/// A point of a generator's parameter space.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint(Vec<f64>);

impl ParamPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        ParamPoint(coords)
    }

    pub fn scalar(x: f64) -> Self {
        ParamPoint(vec![x])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Sup-norm distance.
    pub fn max_abs_diff(&self, other: &ParamPoint) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn coincides_with(&self, other: &ParamPoint) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) < COINCIDENCE_TOL
    }

    pub fn ensure_same_dim(&self, other: &ParamPoint) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Shape {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, factor: f64) -> ParamPoint {
        ParamPoint(self.0.iter().map(|v| v * factor).collect())
    }
}

impl From<Vec<f64>> for ParamPoint {
    fn from(v: Vec<f64>) -> Self {
        ParamPoint(v)
    }
}

impl From<&[f64]> for ParamPoint {
    fn from(v: &[f64]) -> Self {
        ParamPoint(v.to_vec())
    }
}

impl From<f64> for ParamPoint {
    fn from(v: f64) -> Self {
        ParamPoint(vec![v])
    }
}

impl Index<usize> for ParamPoint {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The convex combination `(1 - lambda) * theta1 + lambda * theta2`.
pub fn interpolate(theta1: &ParamPoint, theta2: &ParamPoint, lambda: f64) -> Result<ParamPoint> {
    theta1.ensure_same_dim(theta2)?;
    Ok(ParamPoint(
        theta1
            .0
            .iter()
            .zip(&theta2.0)
            .map(|(a, b)| {
                if a == b {
                    *a
                } else {
                    (1.0 - lambda) * a + lambda * b
                }
            })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolate_scalar() {
        let p = interpolate(&0.0.into(), &1.0.into(), 0.25).unwrap();
        assert_eq!(p.coords(), &[0.25]);
    }

    #[test]
    fn interpolate_identical_endpoints_is_exact() {
        let t = ParamPoint::new(vec![0.3, 1.7, -2.1]);
        assert_eq!(interpolate(&t, &t, 0.7).unwrap(), t);
    }

    #[test]
    fn interpolate_midpoint() {
        let p = interpolate(&vec![1.0, 3.0].into(), &vec![3.0, 1.0].into(), 0.5).unwrap();
        assert_eq!(p.coords(), &[2.0, 2.0]);
    }

    #[test]
    fn interpolate_shape_error() {
        let err = interpolate(&vec![1.0, 3.0].into(), &1.0.into(), 0.5).unwrap_err();
        assert_eq!(err, Error::Shape { expected: 2, got: 1 });
    }
}
