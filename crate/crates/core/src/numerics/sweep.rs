use rayon::prelude::*;

use crate::divergence::{DivParams, DivergenceRegistry};
use crate::error::{Error, Result};
use crate::generators::ConvexGenerator;
use crate::point::ParamPoint;

/// Grid of `(alpha, beta)` cells for a parameter sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    alpha_values: Vec<f64>,
    beta_values: Vec<f64>,
    skip_diagonal: bool,
}

fn sorted_unit(values: Vec<f64>, axis: &str) -> Result<Vec<f64>> {
    if let Some(v) = values.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
        return Err(Error::InvalidParameter(format!(
            "{axis} grid value {v} outside (0, 1]"
        )));
    }
    let mut values = values;
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}

impl SweepGrid {
    pub fn new(alpha_values: Vec<f64>, beta_values: Vec<f64>, skip_diagonal: bool) -> Result<Self> {
        Ok(SweepGrid {
            alpha_values: sorted_unit(alpha_values, "alpha")?,
            beta_values: sorted_unit(beta_values, "beta")?,
            skip_diagonal,
        })
    }

    /// `{i / (n + 1) : i = 1..n}` on both axes with the diagonal skipped,
    /// optionally with `beta = 1` appended so the gradient-free
    /// approximation region is always sampled.
    pub fn uniform(n: usize, append_beta_one: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("grid size must be at least 1".into()));
        }
        let axis: Vec<f64> = (1..=n).map(|i| i as f64 / (n + 1) as f64).collect();
        let mut betas = axis.clone();
        if append_beta_one {
            betas.push(1.0);
        }
        Self::new(axis, betas, true)
    }

    pub fn alpha_values(&self) -> &[f64] {
        &self.alpha_values
    }

    pub fn beta_values(&self) -> &[f64] {
        &self.beta_values
    }

    pub fn skip_diagonal(&self) -> bool {
        self.skip_diagonal
    }

    /// Cells in row-major order: by alpha, then beta.
    pub fn cells(&self) -> Vec<(f64, f64)> {
        self.alpha_values
            .iter()
            .flat_map(|&a| self.beta_values.iter().map(move |&b| (a, b)))
            .filter(|(a, b)| !(self.skip_diagonal && a == b))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub value: f64,
}

/// Evaluates the divergence `div_id` at every grid cell, with the cell's
/// `alpha` and `beta` overriding those in `base`.
///
/// Cells are evaluated in parallel; rows come back in grid order.
pub fn sweep(
    f: &dyn ConvexGenerator,
    theta1: &ParamPoint,
    theta2: &ParamPoint,
    grid: &SweepGrid,
    registry: &DivergenceRegistry,
    div_id: &str,
    base: &DivParams,
) -> Result<Vec<SweepRow>> {
    if !registry.knows(div_id) {
        return Err(Error::UnknownDivergence(div_id.to_string()));
    }
    grid.cells()
        .into_par_iter()
        .map(|(alpha, beta)| {
            let d = registry.resolve(div_id, &base.with_alpha_beta(alpha, beta))?;
            let value = d.divergence(f, theta1, theta2)?;
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "non-finite {div_id} value at alpha={alpha}, beta={beta}"
                )));
            }
            Ok(SweepRow { alpha, beta, value })
        })
        .collect()
}
