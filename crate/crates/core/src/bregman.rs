//! Ordinary, dual, chord and tangent Bregman divergences.
//!
//! All constructions are ordinate gaps at `theta1` between the graph of the
//! generator and a line: the tangent at `theta2` (ordinary), the tangent at an
//! interpolant (tangent divergence) or the chord through two interpolants
//! (chord divergence). Multivariate chords are measured on the line
//! restriction `G(lambda) = F((1 - lambda) theta1 + lambda theta2)`, where
//!
//! ```text
//! B^{a,b}(theta1 : theta2) = G(0) - G(a) + a (G(b) - G(a)) / (b - a)
//! ```
//!
//! For `a, b` in `(0, 1]` this sits between zero and the ordinary Bregman
//! divergence, and tends to it as `a, b -> 1`.

use crate::error::{Error, Result};
use crate::generators::{restrict_to_line, ConvexGenerator, Domain, LineRestriction};
use crate::numerics::bisect_root;
use crate::point::{interpolate, ParamPoint};

/// Bracket width at which the mean-value witness search stops.
pub const WITNESS_TOL: f64 = 1e-14;

/// The two chord anchors, as fractions of the way from `theta1` to `theta2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChordParams {
    alpha: f64,
    beta: f64,
}

impl ChordParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ok = |v: f64| v > 0.0 && v <= 1.0;
        if !(ok(alpha) && ok(beta)) || alpha == beta {
            return Err(Error::InvalidChordParams { alpha, beta });
        }
        Ok(ChordParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn swapped(&self) -> Self {
        ChordParams {
            alpha: self.beta,
            beta: self.alpha,
        }
    }
}

/// Skew pair for [`biskew`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkewPair {
    gamma: f64,
    delta: f64,
}

impl SkewPair {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        if !(gamma.is_finite() && delta.is_finite()) {
            return Err(Error::InvalidSkew {
                gamma,
                delta,
                reason: "values must be finite",
            });
        }
        if gamma == delta {
            return Err(Error::InvalidSkew {
                gamma,
                delta,
                reason: "gamma must differ from delta",
            });
        }
        Ok(SkewPair { gamma, delta })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Skews outside `[0, 1]` extrapolate past the end points, which is only
    /// safe when the domain is the whole space.
    pub fn check_domain(&self, domain: Domain) -> Result<()> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        if domain != Domain::Reals && !(unit(self.gamma) && unit(self.delta)) {
            return Err(Error::InvalidSkew {
                gamma: self.gamma,
                delta: self.delta,
                reason: "skews outside [0, 1] need an unbounded domain",
            });
        }
        Ok(())
    }
}

fn check_pair(f: &dyn ConvexGenerator, theta1: &ParamPoint, theta2: &ParamPoint) -> Result<()> {
    theta1.ensure_same_dim(theta2)?;
    f.check(theta1)?;
    f.check(theta2)
}

/// `B_F(theta1 : theta2) = F(theta1) - F(theta2) - (theta1 - theta2) . grad F(theta2)`.
pub fn bregman(f: &dyn ConvexGenerator, theta1: &ParamPoint, theta2: &ParamPoint) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    if !f.has_gradient() {
        return Err(Error::GradientRequired(f.name().to_string()));
    }
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let grad = f.grad(theta2)?;
    let inner: f64 = theta1
        .coords()
        .iter()
        .zip(theta2.coords())
        .zip(&grad)
        .map(|((a, b), g)| (a - b) * g)
        .sum();
    Ok(f.eval(theta1)? - f.eval(theta2)? - inner)
}

/// Reverse Bregman divergence `B_F(theta2 : theta1)`.
pub fn bregman_dual(f: &dyn ConvexGenerator, theta1: &ParamPoint, theta2: &ParamPoint) -> Result<f64> {
    bregman(f, theta2, theta1)
}

/// `B_{F*}(grad F(theta1) : grad F(theta2))` through the closed-form
/// conjugate. Equals [`bregman_dual`] for a Legendre pair.
pub fn bregman_dual_via_conjugate(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    let conj = f
        .conjugate()
        .ok_or_else(|| Error::ConjugateRequired(f.name().to_string()))?;
    let eta1 = ParamPoint::new(f.grad(theta1)?);
    let eta2 = ParamPoint::new(f.grad(theta2)?);
    bregman(conj.as_ref(), &eta1, &eta2)
}

/// Chord divergence on an existing line restriction, in `lambda` units.
pub fn chord_gap_on_line(g: &LineRestriction<'_>, cp: ChordParams) -> Result<f64> {
    let (a, b) = (cp.alpha, cp.beta);
    let g0 = g.eval(0.0)?;
    let ga = g.eval(a)?;
    let gb = g.eval(b)?;
    Ok(g0 - ga + a * (gb - ga) / (b - a))
}

/// Bregman chord divergence: ordinate gap at `theta1` between the graph and
/// the chord through the interpolants at `alpha` and `beta`. Needs no
/// gradient.
pub fn bregman_chord(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    cp: ChordParams,
) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let g = restrict_to_line(f, theta1, theta2)?;
    chord_gap_on_line(&g, cp)
}

/// Gap at `lambda = 0` between `G` and its tangent at `lambda`:
/// `G(0) - G(lambda) + lambda G'(lambda)`.
pub fn tangent_gap_on_line(g: &LineRestriction<'_>, lambda: f64) -> Result<f64> {
    Ok(g.eval(0.0)? - g.eval(lambda)? + lambda * g.derivative(lambda)?)
}

/// Bregman tangent divergence: gap at `theta1` against the tangent at the
/// interpolant `(theta1 theta2)_alpha`. `alpha = 1` is the ordinary Bregman
/// divergence.
pub fn bregman_tangent(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    alpha: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tangent alpha must lie in (0, 1], got {alpha}"
        )));
    }
    check_pair(f, theta1, theta2)?;
    if !f.has_gradient() {
        return Err(Error::GradientRequired(f.name().to_string()));
    }
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let mid = interpolate(theta1, theta2, alpha)?;
    let grad = f.grad(&mid)?;
    let inner: f64 = theta1
        .coords()
        .iter()
        .zip(theta2.coords())
        .zip(&grad)
        .map(|((a, b), g)| (a - b) * g)
        .sum();
    Ok(f.eval(theta1)? - f.eval(&mid)? - alpha * inner)
}

/// Slope of the chord in `lambda` units, `(G(alpha) - G(beta)) / (alpha - beta)`.
pub fn chord_slope(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    cp: ChordParams,
) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let g = restrict_to_line(f, theta1, theta2)?;
    slope_on_line(&g, cp)
}

fn slope_on_line(g: &LineRestriction<'_>, cp: ChordParams) -> Result<f64> {
    Ok((g.eval(cp.alpha)? - g.eval(cp.beta)?) / (cp.alpha - cp.beta))
}

/// The `lambda*` strictly between `alpha` and `beta` where `G'(lambda*)`
/// equals the chord slope. The tangent at `lambda*` is parallel to the chord,
/// so the tangent divergence at `lambda*` equals the chord divergence.
pub fn mean_value_witness(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    cp: ChordParams,
) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    if !f.has_gradient() {
        return Err(Error::GradientRequired(f.name().to_string()));
    }
    let g = restrict_to_line(f, theta1, theta2)?;
    let slope = slope_on_line(&g, cp)?;
    let lo = cp.alpha.min(cp.beta);
    let hi = cp.alpha.max(cp.beta);
    let mut failure = None;
    let target = |lambda: f64| match g.derivative(lambda) {
        Ok(d) => d - slope,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };
    let root = bisect_root(target, lo, hi, WITNESS_TOL);
    if let Some(e) = failure {
        return Err(e);
    }
    match root {
        Ok(r) => Ok(r.x),
        Err(Error::Bracket { g_lo, g_hi, .. }) => Err(Error::WitnessNotFound {
            lo,
            hi,
            detail: format!(
                "slope {slope:e}, G'(lo) - slope = {g_lo:e}, G'(hi) - slope = {g_hi:e}"
            ),
        }),
        Err(e) => Err(e),
    }
}

/// Gradient-free approximation of the ordinary Bregman divergence by the
/// chord divergence with `alpha = 1 - epsilon`, `beta = 1`.
pub fn bregman_chord_approx(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    epsilon: f64,
) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    bregman_chord(f, theta1, theta2, ChordParams::new(1.0 - epsilon, 1.0)?)
}

/// Biskewed divergence `D((theta1 theta2)_gamma : (theta1 theta2)_delta)`.
///
/// `domain` is the parameter space of `d`, used to decide whether skews
/// outside `[0, 1]` are admissible.
pub fn biskew<D>(
    d: D,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    sp: SkewPair,
    domain: Domain,
) -> Result<f64>
where
    D: Fn(&ParamPoint, &ParamPoint) -> Result<f64>,
{
    sp.check_domain(domain)?;
    theta1.ensure_same_dim(theta2)?;
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let p = interpolate(theta1, theta2, sp.gamma)?;
    let q = interpolate(theta1, theta2, sp.delta)?;
    d(&p, &q)
}
