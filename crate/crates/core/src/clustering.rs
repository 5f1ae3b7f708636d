//! Lloyd-style hard clustering under any registered divergence.
//!
//! The assignment step minimizes `D(x_i : c_j)` over centers; the update step
//! minimizes `sum_{i in cluster} D(x_i : c)` over `c` numerically with
//! per-coordinate golden-section descent, so divergences without a
//! closed-form centroid (chord divergences in particular) work unchanged.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::divergence::{DivParams, Divergence, DivergenceRegistry};
use crate::error::{Error, Result};
use crate::generators::{ConvexGenerator, Domain};
use crate::numerics::coordinate_descent;
use crate::point::ParamPoint;

const CENTROID_MAX_SWEEPS: usize = 100;
const BOX_EXPANSION: f64 = 0.1;

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterConfig {
    pub k: usize,
    pub divergence: String,
    pub params: DivParams,
    pub max_iters: usize,
    pub seed: u64,
    pub centroid_tol: f64,
    pub objective_tol: f64,
}

impl ClusterConfig {
    pub fn new(k: usize, divergence: impl Into<String>, params: DivParams) -> Self {
        ClusterConfig {
            k,
            divergence: divergence.into(),
            params,
            max_iters: 100,
            seed: 0,
            centroid_tol: 1e-8,
            objective_tol: 1e-10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        if !(self.centroid_tol > 0.0 && self.objective_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterResult {
    pub centers: Vec<ParamPoint>,
    pub assignments: Vec<usize>,
    /// Objective after each completed iteration.
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
}

impl ClusterResult {
    pub fn objective(&self) -> f64 {
        self.objective_trace.last().copied().unwrap_or(f64::NAN)
    }
}

/// `sum_i D(x_i : c_{a(i)})`.
pub fn objective(
    points: &[ParamPoint],
    assignments: &[usize],
    centers: &[ParamPoint],
    f: &dyn ConvexGenerator,
    div: &dyn Divergence,
) -> Result<f64> {
    if points.len() != assignments.len() {
        return Err(Error::Shape {
            expected: points.len(),
            got: assignments.len(),
        });
    }
    let terms: Vec<f64> = points
        .par_iter()
        .zip(assignments.par_iter())
        .enumerate()
        .map(|(i, (x, &a))| {
            let c = centers.get(a).ok_or_else(|| Error::AtPoint {
                index: i,
                source: Box::new(Error::InvalidParameter(format!(
                    "assignment {a} with only {} centers",
                    centers.len()
                ))),
            })?;
            div.divergence(f, x, c).map_err(|e| at_point(i, e))
        })
        .collect::<Result<_>>()?;
    // ordered reduction so parallel and sequential runs agree bit-for-bit
    Ok(terms.iter().sum())
}

fn at_point(index: usize, e: Error) -> Error {
    Error::AtPoint {
        index,
        source: Box::new(e),
    }
}

fn distinct_indices(points: &[ParamPoint]) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| seen.insert(p.coords().iter().map(|v| v.to_bits()).collect::<Vec<_>>()))
        .map(|(i, _)| i)
        .collect()
}

/// Runs k-means with the divergence named in the config, resolved from the
/// built-in registry.
pub fn kmeans(points: &[ParamPoint], f: &dyn ConvexGenerator, cfg: &ClusterConfig) -> Result<ClusterResult> {
    let div = DivergenceRegistry::with_builtins().resolve(&cfg.divergence, &cfg.params)?;
    kmeans_with_divergence(points, f, div.as_ref(), cfg)
}

/// Runs k-means with an explicit divergence strategy; `cfg.divergence` and
/// `cfg.params` are ignored.
pub fn kmeans_with_divergence(
    points: &[ParamPoint],
    f: &dyn ConvexGenerator,
    div: &dyn Divergence,
    cfg: &ClusterConfig,
) -> Result<ClusterResult> {
    cfg.validate()?;
    if points.is_empty() {
        return Err(Error::Infeasible { k: cfg.k, distinct: 0 });
    }
    for (i, p) in points.iter().enumerate() {
        f.check(p).map_err(|e| at_point(i, e))?;
    }
    let distinct = distinct_indices(points);
    if cfg.k > distinct.len() {
        return Err(Error::Infeasible {
            k: cfg.k,
            distinct: distinct.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut centers: Vec<ParamPoint> = rand::seq::index::sample(&mut rng, distinct.len(), cfg.k)
        .into_iter()
        .map(|i| points[distinct[i]].clone())
        .collect();

    let mut assignments = vec![0; points.len()];
    let mut trace = Vec::new();
    let mut iterations = 0;
    while iterations < cfg.max_iters {
        iterations += 1;
        let costs = assign(points, &centers, f, div, &mut assignments)?;
        repair_empty_clusters(points, &mut centers, &mut assignments, costs);

        let updated: Vec<ParamPoint> = (0..centers.len())
            .into_par_iter()
            .map(|j| update_center(points, &assignments, j, &centers[j], f, div, cfg.centroid_tol))
            .collect::<Result<_>>()?;
        centers = updated;

        let obj = objective(points, &assignments, &centers, f, div)?;
        let improvement = trace.last().map(|prev: &f64| prev - obj);
        trace.push(obj);
        if matches!(improvement, Some(d) if d < cfg.objective_tol) {
            break;
        }
    }

    Ok(ClusterResult {
        centers,
        assignments,
        objective_trace: trace,
        iterations,
    })
}

// Returns each point's divergence to its assigned center.
fn assign(
    points: &[ParamPoint],
    centers: &[ParamPoint],
    f: &dyn ConvexGenerator,
    div: &dyn Divergence,
    assignments: &mut [usize],
) -> Result<Vec<f64>> {
    let best: Vec<(usize, f64)> = points
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let mut best = (0, f64::INFINITY);
            for (j, c) in centers.iter().enumerate() {
                let d = div.divergence(f, x, c).map_err(|e| at_point(i, e))?;
                if d < best.1 {
                    best = (j, d);
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    for (slot, (j, _)) in assignments.iter_mut().zip(&best) {
        *slot = *j;
    }
    Ok(best.into_iter().map(|(_, d)| d).collect())
}

// An empty cluster takes over the point farthest from its own center, as a
// singleton centered on that point.
fn repair_empty_clusters(
    points: &[ParamPoint],
    centers: &mut [ParamPoint],
    assignments: &mut [usize],
    mut costs: Vec<f64>,
) {
    let k = centers.len();
    loop {
        let mut sizes = vec![0usize; k];
        for &a in assignments.iter() {
            sizes[a] += 1;
        }
        let Some(empty) = sizes.iter().position(|&s| s == 0) else {
            return;
        };
        let donor = (0..points.len())
            .filter(|&i| sizes[assignments[i]] > 1)
            .max_by(|&a, &b| costs[a].total_cmp(&costs[b]).then(b.cmp(&a)));
        let Some(i) = donor else {
            return;
        };
        assignments[i] = empty;
        centers[empty] = points[i].clone();
        costs[i] = 0.0;
    }
}

fn bounding_box(members: &[&ParamPoint], domain: Domain) -> Vec<(f64, f64)> {
    let dim = members[0].dim();
    (0..dim)
        .map(|d| {
            let lo = members.iter().map(|p| p[d]).fold(f64::INFINITY, f64::min);
            let hi = members.iter().map(|p| p[d]).fold(f64::NEG_INFINITY, f64::max);
            let pad = BOX_EXPANSION * (hi - lo);
            let lo = match domain {
                Domain::Reals => lo - pad,
                // stay strictly inside the boundary at zero
                Domain::PositiveOrthant | Domain::OpenSimplex => (lo - pad).max(0.5 * lo),
            };
            (lo, hi + pad)
        })
        .collect()
}

fn update_center(
    points: &[ParamPoint],
    assignments: &[usize],
    cluster: usize,
    current: &ParamPoint,
    f: &dyn ConvexGenerator,
    div: &dyn Divergence,
    tol: f64,
) -> Result<ParamPoint> {
    let members: Vec<&ParamPoint> = points
        .iter()
        .zip(assignments)
        .filter(|(_, &a)| a == cluster)
        .map(|(p, _)| p)
        .collect();
    if members.is_empty() {
        return Ok(current.clone());
    }
    if members.iter().all(|p| *p == members[0]) {
        return Ok(members[0].clone());
    }

    let cost = |c: &[f64]| -> f64 {
        let c = ParamPoint::from(c);
        let mut total = 0.0;
        for x in &members {
            match div.divergence(f, x, &c) {
                Ok(v) => total += v,
                Err(_) => return f64::INFINITY,
            }
        }
        total
    };

    let n = members.len() as f64;
    let dim = members[0].dim();
    let mean: Vec<f64> = (0..dim)
        .map(|d| members.iter().map(|p| p[d]).sum::<f64>() / n)
        .collect();
    let bounds = bounding_box(&members, f.domain());
    let solved = coordinate_descent(cost, &mean, &bounds, tol, CENTROID_MAX_SWEEPS);

    // never accept a center worse than the one we already have
    let current_cost = cost(current.coords());
    if solved.value <= current_cost || !f.domain().contains(current.coords()) {
        Ok(solved.x.into())
    } else {
        Ok(current.clone())
    }
}

/// Adjusted Rand index between two labelings of the same points.
pub fn adjusted_rand_index(a: &[usize], b: &[usize]) -> f64 {
    assert_eq!(a.len(), b.len(), "labelings must have equal length");
    let n = a.len();
    let ka = a.iter().copied().max().map_or(0, |m| m + 1);
    let kb = b.iter().copied().max().map_or(0, |m| m + 1);
    let mut table = vec![vec![0u64; kb]; ka];
    for (&i, &j) in a.iter().zip(b) {
        table[i][j] += 1;
    }
    let pairs = |m: u64| (m * m.saturating_sub(1)) as f64 / 2.0;
    let index: f64 = table.iter().flatten().map(|&m| pairs(m)).sum();
    let rows: f64 = table.iter().map(|r| pairs(r.iter().sum())).sum();
    let cols: f64 = (0..kb)
        .map(|j| pairs(table.iter().map(|r| r[j]).sum()))
        .sum();
    let total = pairs(n as u64);
    if total == 0.0 {
        return 1.0;
    }
    let expected = rows * cols / total;
    let max_index = 0.5 * (rows + cols);
    if max_index == expected {
        return 1.0;
    }
    (index - expected) / (max_index - expected)
}
