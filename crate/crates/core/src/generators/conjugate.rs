use super::ConvexGenerator;
use crate::error::{Error, Result};
use crate::numerics::coordinate_descent;
use crate::point::ParamPoint;

const CONJUGATE_TOL: f64 = 1e-10;
const CONJUGATE_MAX_SWEEPS: usize = 500;

/// Result of a numerical Legendre-Fenchel transform.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateEstimate {
    pub value: f64,
    pub argmax: ParamPoint,
    /// The maximizer sits on the search box boundary, so the true supremum
    /// may lie outside the box.
    pub at_boundary: bool,
}

/// `sup_{theta in box} theta . eta - F(theta)` by derivative-free coordinate
/// descent over a compact box inside the generator's domain.
pub fn legendre_conjugate_numeric(
    f: &dyn ConvexGenerator,
    eta: &ParamPoint,
    search_box: &[(f64, f64)],
) -> Result<ConjugateEstimate> {
    if eta.dim() != f.dim() {
        return Err(Error::Shape {
            expected: f.dim(),
            got: eta.dim(),
        });
    }
    if search_box.len() != f.dim() {
        return Err(Error::Shape {
            expected: f.dim(),
            got: search_box.len(),
        });
    }
    if search_box.iter().any(|(lo, hi)| !(lo < hi)) {
        return Err(Error::InvalidParameter(
            "search box needs lo < hi on every axis".into(),
        ));
    }
    let lower: Vec<f64> = search_box.iter().map(|b| b.0).collect();
    let upper: Vec<f64> = search_box.iter().map(|b| b.1).collect();
    f.check(&lower.clone().into())?;
    f.check(&upper.clone().into())?;

    let domain = f.domain();
    let objective = |theta: &[f64]| {
        if !domain.contains(theta) {
            return f64::INFINITY;
        }
        f.value(theta) - eta.dot(theta)
    };
    let start: Vec<f64> = search_box.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect();
    let m = coordinate_descent(
        objective,
        &start,
        search_box,
        CONJUGATE_TOL,
        CONJUGATE_MAX_SWEEPS,
    );
    let at_boundary = m.x.iter().zip(search_box).any(|(x, (lo, hi))| {
        let slack = 1e3 * CONJUGATE_TOL * (hi - lo).max(1.0);
        (x - lo).abs() <= slack || (hi - x).abs() <= slack
    });
    Ok(ConjugateEstimate {
        value: -m.value,
        argmax: m.x.into(),
        at_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_builtin;

    #[test]
    fn quadratic_at_two() {
        let f = make_builtin("quadratic", 1).unwrap();
        let c = legendre_conjugate_numeric(f.as_ref(), &2.0.into(), &[(-10.0, 10.0)]).unwrap();
        assert!((c.value - 1.0).abs() < 1e-9);
        assert!(!c.at_boundary);
    }

    #[test]
    fn shannon_at_one() {
        let f = make_builtin("shannon_negentropy", 1).unwrap();
        let c = legendre_conjugate_numeric(f.as_ref(), &1.0.into(), &[(0.001, 10.0)]).unwrap();
        assert!((c.value - 1.0).abs() < 1e-9);
        assert!((c.argmax[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn quadratic_at_zero() {
        let f = make_builtin("quadratic", 1).unwrap();
        let c = legendre_conjugate_numeric(f.as_ref(), &0.0.into(), &[(-1.0, 1.0)]).unwrap();
        assert!(c.value.abs() < 1e-12);
    }

    #[test]
    fn boundary_flag() {
        let f = make_builtin("quadratic", 1).unwrap();
        // unconstrained maximizer is eta / 2 = 5, outside the box
        let c = legendre_conjugate_numeric(f.as_ref(), &10.0.into(), &[(-1.0, 1.0)]).unwrap();
        assert!(c.at_boundary);
        assert_eq!(c.argmax[0], 1.0);
    }

    #[test]
    fn box_must_lie_in_domain() {
        let f = make_builtin("burg_negentropy", 1).unwrap();
        assert!(matches!(
            legendre_conjugate_numeric(f.as_ref(), &(-1.0).into(), &[(-1.0, 1.0)]),
            Err(Error::Domain { .. })
        ));
    }
}
