use super::ConvexGenerator;
use crate::error::{Error, Result};
use crate::point::{interpolate, ParamPoint};

/// Restriction of a generator to the line through two distinct points,
/// `G(lambda) = F((1 - lambda) theta1 + lambda theta2)`.
///
/// `G` is a strictly convex univariate function whenever `F` is strictly
/// convex, so univariate constructions (chords, tangents, slopes) apply to
/// any multivariate generator through it.
#[derive(Debug, Clone)]
pub struct LineRestriction<'a> {
    base: &'a dyn ConvexGenerator,
    theta1: ParamPoint,
    theta2: ParamPoint,
    direction: Vec<f64>,
}

/// Builds the line restriction of `base` through `theta1` (at `lambda = 0`)
/// and `theta2` (at `lambda = 1`).
pub fn restrict_to_line<'a>(
    base: &'a dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
) -> Result<LineRestriction<'a>> {
    base.check(theta1)?;
    base.check(theta2)?;
    if theta1 == theta2 {
        return Err(Error::DegenerateRestriction);
    }
    let direction = theta2
        .coords()
        .iter()
        .zip(theta1.coords())
        .map(|(b, a)| b - a)
        .collect();
    Ok(LineRestriction {
        base,
        theta1: theta1.clone(),
        theta2: theta2.clone(),
        direction,
    })
}

impl<'a> LineRestriction<'a> {
    pub fn base(&self) -> &'a dyn ConvexGenerator {
        self.base
    }

    pub fn theta1(&self) -> &ParamPoint {
        &self.theta1
    }

    pub fn theta2(&self) -> &ParamPoint {
        &self.theta2
    }

    pub fn point_at(&self, lambda: f64) -> ParamPoint {
        // endpoints are exact so G(0) = F(theta1), G(1) = F(theta2) bit-for-bit
        if lambda == 0.0 {
            return self.theta1.clone();
        }
        if lambda == 1.0 {
            return self.theta2.clone();
        }
        interpolate(&self.theta1, &self.theta2, lambda).expect("dimensions checked at construction")
    }

    pub fn eval(&self, lambda: f64) -> Result<f64> {
        self.base.eval(&self.point_at(lambda))
    }

    /// `G'(lambda) = (theta2 - theta1) . grad F(theta(lambda))`.
    pub fn derivative(&self, lambda: f64) -> Result<f64> {
        let g = self.base.grad(&self.point_at(lambda))?;
        Ok(self.direction.iter().zip(&g).map(|(d, v)| d * v).sum())
    }

    pub fn contains(&self, lambda: f64) -> bool {
        self.base.domain().contains(self.point_at(lambda).coords())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_builtin;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_restriction() {
        let f = make_builtin("quadratic", 1).unwrap();
        let g = restrict_to_line(f.as_ref(), &0.0.into(), &1.0.into()).unwrap();
        assert_eq!(g.eval(0.25).unwrap(), 0.0625);
    }

    #[test]
    fn log_sum_exp_restriction_at_zero() {
        let f = make_builtin("log_sum_exp", 2).unwrap();
        let g = restrict_to_line(f.as_ref(), &vec![0.0, 0.0].into(), &vec![1.0, 1.0].into()).unwrap();
        assert_relative_eq!(g.eval(0.0).unwrap(), 3f64.ln(), epsilon = 1e-15);
        assert_relative_eq!(g.eval(0.0).unwrap(), 1.0986, epsilon = 1e-4);
    }

    #[test]
    fn shannon_restriction_at_one() {
        let f = make_builtin("shannon_negentropy", 1).unwrap();
        let g = restrict_to_line(f.as_ref(), &0.2.into(), &0.8.into()).unwrap();
        assert_eq!(g.eval(1.0).unwrap(), 0.8 * 0.8f64.ln());
        assert_relative_eq!(g.eval(1.0).unwrap(), -0.1785, epsilon = 1e-4);
    }

    #[test]
    fn endpoints_match_generator() {
        let f = make_builtin("log_sum_exp", 3).unwrap();
        let a: ParamPoint = vec![0.1, -0.4, 2.0].into();
        let b: ParamPoint = vec![-1.0, 0.3, 0.7].into();
        let g = restrict_to_line(f.as_ref(), &a, &b).unwrap();
        assert_eq!(g.eval(0.0).unwrap(), f.eval(&a).unwrap());
        assert_eq!(g.eval(1.0).unwrap(), f.eval(&b).unwrap());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let f = make_builtin("log_sum_exp", 3).unwrap();
        let g = restrict_to_line(
            f.as_ref(),
            &vec![0.1, -0.4, 2.0].into(),
            &vec![-1.0, 0.3, 0.7].into(),
        )
        .unwrap();
        let h = 1e-5;
        let fd = (g.eval(0.4 + h).unwrap() - g.eval(0.4 - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(g.derivative(0.4).unwrap(), fd, epsilon = 1e-9);
    }

    #[test]
    fn errors() {
        let f = make_builtin("burg_negentropy", 1).unwrap();
        assert_eq!(
            restrict_to_line(f.as_ref(), &1.0.into(), &1.0.into()).unwrap_err(),
            Error::DegenerateRestriction
        );
        assert!(matches!(
            restrict_to_line(f.as_ref(), &(-1.0).into(), &1.0.into()),
            Err(Error::Domain { .. })
        ));
    }
}
