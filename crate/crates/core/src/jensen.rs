//! Jensen (Burbea-Rao) divergences and their skewed and chord variants.
//!
//! Weights follow `(x y)_l = (1 - l) x + l y` for both points and function
//! values.

use crate::bregman::bregman;
use crate::error::{Error, Result};
use crate::generators::ConvexGenerator;
use crate::point::{interpolate, ParamPoint};

/// Anchors `alpha <= beta` of the lower chord and evaluation position
/// `gamma` in `[alpha, beta]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JensenChordParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl JensenChordParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        let reason = if !(unit(alpha) && unit(beta) && unit(gamma)) {
            Some("alpha, beta, gamma must lie in [0, 1]")
        } else if alpha > beta {
            Some("alpha must not exceed beta")
        } else if gamma < alpha || gamma > beta {
            Some("gamma must lie in [alpha, beta]")
        } else if alpha == beta && gamma != alpha {
            Some("alpha = beta requires gamma = alpha")
        } else {
            None
        };
        match reason {
            Some(r) => Err(Error::InvalidParameter(format!(
                "jensen chord (alpha={alpha}, beta={beta}, gamma={gamma}): {r}"
            ))),
            None => Ok(JensenChordParams { alpha, beta, gamma }),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Parameters describing the same gap with the end points exchanged.
    pub fn mirrored(&self) -> Self {
        JensenChordParams {
            alpha: 1.0 - self.beta,
            beta: 1.0 - self.alpha,
            gamma: 1.0 - self.gamma,
        }
    }
}

fn check_pair(f: &dyn ConvexGenerator, theta1: &ParamPoint, theta2: &ParamPoint) -> Result<()> {
    theta1.ensure_same_dim(theta2)?;
    f.check(theta1)?;
    f.check(theta2)
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {v}")))
    }
}

// (F1 F2)_a - F((theta1 theta2)_a), valid for any a in [0, 1]
fn skew_gap(f: &dyn ConvexGenerator, theta1: &ParamPoint, theta2: &ParamPoint, a: f64) -> Result<f64> {
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let mid = interpolate(theta1, theta2, a)?;
    Ok((1.0 - a) * f.eval(theta1)? + a * f.eval(theta2)? - f.eval(&mid)?)
}

/// `J_F = (F(theta1) + F(theta2)) / 2 - F((theta1 + theta2) / 2)`.
pub fn jensen(f: &dyn ConvexGenerator, theta1: &ParamPoint, theta2: &ParamPoint) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    skew_gap(f, theta1, theta2, 0.5)
}

/// Skewed Jensen divergence `(F1 F2)_alpha - F((theta1 theta2)_alpha)`.
pub fn jensen_skewed(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    alpha: f64,
) -> Result<f64> {
    check_open_unit("alpha", alpha)?;
    check_pair(f, theta1, theta2)?;
    skew_gap(f, theta1, theta2, alpha)
}

/// `|J^alpha / alpha - B_F(theta2 : theta1)|` for each alpha. The scaled
/// skew Jensen divergence tends to the reverse Bregman divergence as
/// alpha goes to zero.
pub fn jensen_scaled_limit_check(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    alphas: &[f64],
) -> Result<Vec<f64>> {
    let reverse = bregman(f, theta2, theta1)?;
    alphas
        .iter()
        .map(|&a| Ok((jensen_skewed(f, theta1, theta2, a)? / a - reverse).abs()))
        .collect()
}

/// Skewed Jensen-Bregman divergence
/// `(1 - alpha) B_F(theta1 : m) + alpha B_F(theta2 : m)` with
/// `m = (theta1 theta2)_alpha`.
pub fn jensen_bregman(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    alpha: f64,
) -> Result<f64> {
    check_open_unit("alpha", alpha)?;
    check_pair(f, theta1, theta2)?;
    if !f.has_gradient() {
        return Err(Error::GradientRequired(f.name().to_string()));
    }
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let mid = interpolate(theta1, theta2, alpha)?;
    Ok((1.0 - alpha) * bregman(f, theta1, &mid)? + alpha * bregman(f, theta2, &mid)?)
}

/// Jensen divergence as the half-sum of Bregman divergences to the midpoint,
/// `(B_F(theta1 : m) + B_F(theta2 : m)) / 2`.
pub fn jensen_via_bregman(f: &dyn ConvexGenerator, theta1: &ParamPoint, theta2: &ParamPoint) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    let mid = interpolate(theta1, theta2, 0.5)?;
    Ok(0.5 * (bregman(f, theta1, &mid)? + bregman(f, theta2, &mid)?))
}

/// Jensen chord divergence: at position `gamma`, the gap between the upper
/// chord through the end points and the lower chord through the interpolants
/// at `alpha` and `beta`.
pub fn jensen_chord(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    jcp: JensenChordParams,
) -> Result<f64> {
    check_pair(f, theta1, theta2)?;
    if jcp.alpha == jcp.beta {
        return skew_gap(f, theta1, theta2, jcp.gamma);
    }
    if theta1.coincides_with(theta2) {
        return Ok(0.0);
    }
    let (a, b, c) = (jcp.alpha, jcp.beta, jcp.gamma);
    let upper = (1.0 - c) * f.eval(theta1)? + c * f.eval(theta2)?;
    let fa = f.eval(&interpolate(theta1, theta2, a)?)?;
    let fb = f.eval(&interpolate(theta1, theta2, b)?)?;
    let w = (c - a) / (b - a);
    Ok(upper - ((1.0 - w) * fa + w * fb))
}
