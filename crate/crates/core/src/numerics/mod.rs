//! Shared numerical machinery: finite differences, bracketing root finding,
//! derivative-free minimization and the parameter sweep engine.

mod sweep;

use crate::error::{Error, Result};
use crate::generators::ConvexGenerator;
use crate::point::ParamPoint;

pub use sweep::{sweep, SweepGrid, SweepRow};

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Central finite-difference gradient `[F(x + h e_i) - F(x - h e_i)] / 2h`.
///
/// If a stencil point leaves the domain the step is shrunk once by 10x
/// before giving up with a domain error.
pub fn central_diff_grad(f: &dyn ConvexGenerator, theta: &ParamPoint, h: f64) -> Result<Vec<f64>> {
    f.check(theta)?;
    match stencil_grad(f, theta, h) {
        Ok(g) => Ok(g),
        Err(Error::Domain { .. }) => stencil_grad(f, theta, h / 10.0),
        Err(e) => Err(e),
    }
}

fn stencil_grad(f: &dyn ConvexGenerator, theta: &ParamPoint, h: f64) -> Result<Vec<f64>> {
    let mut probe = theta.coords().to_vec();
    let mut grad = Vec::with_capacity(probe.len());
    for i in 0..probe.len() {
        let x = probe[i];
        probe[i] = x + h;
        let plus = f.eval(&ParamPoint::from(probe.as_slice()))?;
        probe[i] = x - h;
        let minus = f.eval(&ParamPoint::from(probe.as_slice()))?;
        probe[i] = x;
        grad.push((plus - minus) / (2.0 * h));
    }
    Ok(grad)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub x: f64,
    pub iterations: usize,
}

/// Upper bound on bisection steps needed to shrink `[lo, hi]` below `tol`.
pub fn bisection_iteration_cap(lo: f64, hi: f64, tol: f64) -> usize {
    ((hi - lo).abs() / tol).log2().max(0.0).ceil() as usize + 2
}

/// Bisection on a sign-changing bracket.
///
/// Stops when the bracket is narrower than `tol`, when `g` hits zero
/// exactly, or when the midpoint can no longer be represented between the
/// bracket ends.
pub fn bisect_root<G: FnMut(f64) -> f64>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<Root> {
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut g_lo = g(lo);
    let g_hi = g(hi);
    if g_lo == 0.0 {
        return Ok(Root { x: lo, iterations: 0 });
    }
    if g_hi == 0.0 {
        return Ok(Root { x: hi, iterations: 0 });
    }
    if !(g_lo.signum() * g_hi.signum() < 0.0) {
        return Err(Error::Bracket { lo, hi, g_lo, g_hi });
    }
    let cap = bisection_iteration_cap(lo, hi, tol);
    let mut iterations = 0;
    while hi - lo > tol && iterations < cap {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(Root { x: mid, iterations });
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Ok(Root {
        x: 0.5 * (lo + hi),
        iterations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Upper bound on golden-section steps needed to shrink `[lo, hi]` below `tol`.
pub fn golden_iteration_cap(lo: f64, hi: f64, tol: f64) -> usize {
    (((hi - lo).abs() / tol).ln() / (1.0 / INV_PHI).ln())
        .max(0.0)
        .ceil() as usize
        + 2
}

// NaN objective values compare as +inf
fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Golden-section search for the minimum of a unimodal function on `[lo, hi]`.
///
/// The returned point is the best of the final bracket midpoint and the two
/// original end points, so a minimizer on the boundary is returned exactly.
pub fn golden_minimize<G: FnMut(f64) -> f64>(mut g: G, lo: f64, hi: f64, tol: f64) -> Minimum {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f = |x: f64| sanitize(g(x));
    let cap = golden_iteration_cap(lo, hi, tol);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while b - a > tol && iterations < cap {
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let mut best = Minimum {
        x: mid,
        value: f(mid),
        iterations,
    };
    for end in [lo, hi] {
        let v = f(end);
        if v < best.value {
            best.x = end;
            best.value = v;
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateMinimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub sweeps: usize,
    pub converged: bool,
}

/// Round-robin coordinate descent inside a box, with a golden-section line
/// search along each coordinate. Stops once a full sweep moves no
/// coordinate by more than `tol`.
pub fn coordinate_descent<G: FnMut(&[f64]) -> f64>(
    mut g: G,
    x0: &[f64],
    bounds: &[(f64, f64)],
    tol: f64,
    max_sweeps: usize,
) -> CoordinateMinimum {
    debug_assert_eq!(x0.len(), bounds.len());
    let mut x = x0.to_vec();
    let line_tol = tol * 0.1;
    let mut sweeps = 0;
    let mut converged = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut moved = 0.0_f64;
        for i in 0..x.len() {
            let (lo, hi) = bounds[i];
            let before = x[i];
            let mut probe = x.clone();
            let m = golden_minimize(
                |t| {
                    probe[i] = t;
                    g(&probe)
                },
                lo,
                hi,
                line_tol,
            );
            // keep the old coordinate unless the line search found strictly better
            let current = sanitize(g(&x));
            if m.value < current {
                x[i] = m.x;
            }
            moved = moved.max((x[i] - before).abs());
        }
        if moved < tol {
            converged = true;
            break;
        }
    }
    let value = g(&x);
    CoordinateMinimum {
        x,
        value,
        sweeps,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_builtin;
    use approx::assert_relative_eq;

    #[test]
    fn fd_gradients() {
        let q = make_builtin("quadratic", 1).unwrap();
        assert!((central_diff_grad(q.as_ref(), &3.0.into(), 1e-5).unwrap()[0] - 6.0).abs() < 1e-8);
        let s = make_builtin("shannon_negentropy", 1).unwrap();
        assert!((central_diff_grad(s.as_ref(), &1.0.into(), 1e-5).unwrap()[0] - 1.0).abs() < 1e-8);
        let b = make_builtin("burg_negentropy", 1).unwrap();
        assert!((central_diff_grad(b.as_ref(), &2.0.into(), 1e-5).unwrap()[0] + 0.5).abs() < 1e-8);
    }

    #[test]
    fn fd_shrinks_step_near_boundary() {
        let b = make_builtin("burg_negentropy", 1).unwrap();
        // x - h leaves the domain at h = 1e-5 but not at 1e-6
        let g = central_diff_grad(b.as_ref(), &5e-6.into(), 1e-5).unwrap();
        assert_relative_eq!(g[0], -1.0 / 5e-6, max_relative = 1e-1);
        assert!(matches!(
            central_diff_grad(b.as_ref(), &5e-8.into(), 1e-5),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn bisect_linear_and_sqrt2() {
        let r = bisect_root(|x| 2.0 * x - 1.0, 0.0, 1.0, 1e-10).unwrap();
        assert!((r.x - 0.5).abs() < 1e-10);
        let r = bisect_root(|x| x * x - 2.0, 0.0, 2.0, 1e-10).unwrap();
        assert!((r.x - 2f64.sqrt()).abs() < 1e-10);
        assert!(r.iterations <= bisection_iteration_cap(0.0, 2.0, 1e-10));
    }

    #[test]
    fn bisect_without_sign_change() {
        assert!(matches!(
            bisect_root(|x| x, 0.5, 1.0, 1e-10),
            Err(Error::Bracket { .. })
        ));
    }

    #[test]
    fn golden_vertex_and_boundary() {
        let m = golden_minimize(|x| (x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-8);
        assert!((m.x - 0.3).abs() < 1e-8);
        assert!(m.iterations <= golden_iteration_cap(0.0, 1.0, 1e-8));
        let m = golden_minimize(|x| x, 0.0, 1.0, 1e-8);
        assert_eq!(m.x, 0.0);
    }

    #[test]
    fn coordinate_descent_on_coupled_quadratic() {
        let g = |x: &[f64]| {
            (x[0] - 1.0).powi(2) + (x[1] + 0.5).powi(2) + 0.5 * (x[0] - 1.0) * (x[1] + 0.5)
        };
        let m = coordinate_descent(g, &[0.0, 0.0], &[(-3.0, 3.0), (-3.0, 3.0)], 1e-9, 200);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-7);
        assert!((m.x[1] + 0.5).abs() < 1e-7);
    }
}
