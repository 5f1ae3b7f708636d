//! Csiszar f-divergences between finite positive measures.
//!
//! Convention: `I_f[p : q] = sum_i p_i f(q_i / p_i)`, so `f(u) = -log u`
//! yields `KL[p : q]`. All logarithms are natural.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Tolerance on the total mass of a normalized distribution.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Convex `f` on `(0, inf)` with `f(1) = 0`.
pub trait FGenerator: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn eval(&self, u: f64) -> f64;
}

pub type SharedFGenerator = Arc<dyn FGenerator>;

/// `f(u) = -log u`; induces the Kullback-Leibler divergence.
#[derive(Clone, Copy, Debug, Default)]
pub struct KlGenerator;

impl FGenerator for KlGenerator {
    fn name(&self) -> String {
        "kl".into()
    }

    fn eval(&self, u: f64) -> f64 {
        -u.ln()
    }
}

/// `f(u) = |u - 1| / 2`; induces the total variation distance.
#[derive(Clone, Copy, Debug, Default)]
pub struct TotalVariationGenerator;

impl FGenerator for TotalVariationGenerator {
    fn name(&self) -> String {
        "tv".into()
    }

    fn eval(&self, u: f64) -> f64 {
        0.5 * (u - 1.0).abs()
    }
}

/// `f(u) = (u - 1)^2`; induces the Neyman/Pearson chi-square divergence.
#[derive(Clone, Copy, Debug, Default)]
pub struct ChiSquareGenerator;

impl FGenerator for ChiSquareGenerator {
    fn name(&self) -> String {
        "chi2".into()
    }

    fn eval(&self, u: f64) -> f64 {
        (u - 1.0) * (u - 1.0)
    }
}

/// Dual generator `u f(1/u)`, inducing the reverse divergence.
#[derive(Clone, Debug)]
pub struct DualGenerator(SharedFGenerator);

impl FGenerator for DualGenerator {
    fn name(&self) -> String {
        format!("dual({})", self.0.name())
    }

    fn eval(&self, u: f64) -> f64 {
        u * self.0.eval(1.0 / u)
    }
}

/// `(f + f_dual) / 2`, inducing the half-sum of both orientations.
#[derive(Clone, Debug)]
pub struct JSymmetrizedGenerator(SharedFGenerator);

impl FGenerator for JSymmetrizedGenerator {
    fn name(&self) -> String {
        format!("jsym({})", self.0.name())
    }

    fn eval(&self, u: f64) -> f64 {
        0.5 * (self.0.eval(u) + u * self.0.eval(1.0 / u))
    }
}

/// Generator inducing `(I_f[p : m] + I_f[q : m]) / 2` with `m = (p + q) / 2`:
/// `f_js(u) = (f((1 + u) / 2) + u f((1 + u) / (2u))) / 2`.
#[derive(Clone, Debug)]
pub struct JsSymmetrizedGenerator(SharedFGenerator);

impl FGenerator for JsSymmetrizedGenerator {
    fn name(&self) -> String {
        format!("jssym({})", self.0.name())
    }

    fn eval(&self, u: f64) -> f64 {
        let m = 0.5 * (1.0 + u);
        0.5 * (self.0.eval(m) + u * self.0.eval(m / u))
    }
}

pub fn dual_generator(f: SharedFGenerator) -> SharedFGenerator {
    Arc::new(DualGenerator(f))
}

pub fn j_symmetrize(f: SharedFGenerator) -> SharedFGenerator {
    Arc::new(JSymmetrizedGenerator(f))
}

pub fn js_symmetrize(f: SharedFGenerator) -> SharedFGenerator {
    Arc::new(JsSymmetrizedGenerator(f))
}

pub type FGeneratorFactory = fn() -> SharedFGenerator;

/// Name-indexed table of f-generators.
#[derive(Clone)]
pub struct FGeneratorRegistry {
    factories: BTreeMap<String, FGeneratorFactory>,
}

impl FGeneratorRegistry {
    pub fn empty() -> Self {
        FGeneratorRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register("kl", || Arc::new(KlGenerator));
        reg.register("tv", || Arc::new(TotalVariationGenerator));
        reg.register("chi2", || Arc::new(ChiSquareGenerator));
        reg
    }

    pub fn register(&mut self, name: &str, factory: FGeneratorFactory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn make(&self, name: &str) -> Result<SharedFGenerator> {
        let key = name.strip_prefix("f_").unwrap_or(name);
        self.factories
            .get(key)
            .map(|f| f())
            .ok_or_else(|| Error::UnknownFGenerator(name.to_string()))
    }
}

impl Default for FGeneratorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl fmt::Debug for FGeneratorRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

/// Looks up a built-in f-generator (`kl`, `tv`, `chi2`; an `f_` prefix is accepted).
pub fn make_f_generator(name: &str) -> Result<SharedFGenerator> {
    static REGISTRY: OnceLock<FGeneratorRegistry> = OnceLock::new();
    REGISTRY.get_or_init(FGeneratorRegistry::with_builtins).make(name)
}

/// A finite non-negative weight vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDist {
    weights: Vec<f64>,
    normalized: bool,
}

impl DiscreteDist {
    /// A positive measure; weights must be finite and non-negative.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "weights must be finite and non-negative, got {w}"
            )));
        }
        Ok(DiscreteDist {
            weights,
            normalized: false,
        })
    }

    /// A point of the probability simplex; the weights must already sum to one.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let mut d = Self::new(weights)?;
        let total: f64 = d.weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidParameter(format!(
                "normalized distribution sums to {total}"
            )));
        }
        d.normalized = true;
        Ok(d)
    }

    /// Rescales the weights to unit mass.
    pub fn normalize(&self) -> Result<Self> {
        let total: f64 = self.weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidParameter("cannot normalize zero mass".into()));
        }
        Ok(DiscreteDist {
            weights: self.weights.iter().map(|w| w / total).collect(),
            normalized: true,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Equal-weight mixture `(p + q) / 2`.
    pub fn midpoint(&self, other: &DiscreteDist) -> Result<DiscreteDist> {
        check_shapes(self, other)?;
        Ok(DiscreteDist {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| 0.5 * (a + b))
                .collect(),
            normalized: self.normalized && other.normalized,
        })
    }
}

fn check_shapes(p: &DiscreteDist, q: &DiscreteDist) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::Shape {
            expected: p.len(),
            got: q.len(),
        });
    }
    Ok(())
}

fn check_positive(p: &DiscreteDist, q: &DiscreteDist) -> Result<()> {
    check_shapes(p, q)?;
    for d in [p, q] {
        if d.weights.iter().any(|&w| w <= 0.0) {
            return Err(Error::Domain {
                generator: "f-divergence".into(),
                domain: "strictly positive weights".into(),
                point: d.weights.clone(),
            });
        }
    }
    Ok(())
}

/// Scalar f-divergence `a f(b / a)`.
pub fn scalar_f_div(f: &dyn FGenerator, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain {
            generator: "scalar f-divergence".into(),
            domain: "positive reals".into(),
            point: vec![a, b],
        });
    }
    if a == b {
        return Ok(0.0);
    }
    Ok(a * f.eval(b / a))
}

/// `I_f[p : q] = sum_i p_i f(q_i / p_i)`.
pub fn f_div(f: &dyn FGenerator, p: &DiscreteDist, q: &DiscreteDist) -> Result<f64> {
    check_positive(p, q)?;
    p.weights
        .iter()
        .zip(&q.weights)
        .map(|(&a, &b)| scalar_f_div(f, a, b))
        .sum()
}

/// Jensen-Shannon-type symmetrization `(I_f[p : m] + I_f[q : m]) / 2`.
pub fn js_symmetrize_div(f: &dyn FGenerator, p: &DiscreteDist, q: &DiscreteDist) -> Result<f64> {
    check_positive(p, q)?;
    let m = p.midpoint(q)?;
    Ok(0.5 * (f_div(f, p, &m)? + f_div(f, q, &m)?))
}

/// Kullback-Leibler divergence `sum p_i log(p_i / q_i)`.
pub fn kl(p: &DiscreteDist, q: &DiscreteDist) -> Result<f64> {
    f_div(&KlGenerator, p, q)
}

/// Extended KL between positive measures, `sum p_i log(p_i / q_i) + q_i - p_i`.
pub fn extended_kl(p: &DiscreteDist, q: &DiscreteDist) -> Result<f64> {
    check_positive(p, q)?;
    Ok(p.weights
        .iter()
        .zip(&q.weights)
        .map(|(&a, &b)| if a == b { 0.0 } else { a * (a / b).ln() + b - a })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn dist(w: &[f64]) -> DiscreteDist {
        DiscreteDist::new(w.to_vec()).unwrap()
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(scalar_f_div(&KlGenerator, 1.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(scalar_f_div(&KlGenerator, 0.5, 0.25).unwrap(), 0.5 * 2f64.ln(), epsilon = 1e-15);
        assert_relative_eq!(scalar_f_div(&KlGenerator, 0.5, 0.25).unwrap(), 0.3466, epsilon = 1e-4);
        assert_eq!(scalar_f_div(&ChiSquareGenerator, 3.7, 3.7).unwrap(), 0.0);
        assert!(matches!(
            scalar_f_div(&KlGenerator, 0.0, 1.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn kl_examples() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.25, 0.75]);
        let pq = f_div(&KlGenerator, &p, &q).unwrap();
        assert_relative_eq!(pq, 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln(), epsilon = 1e-15);
        assert_relative_eq!(pq, 0.14384, epsilon = 1e-5);
        assert_eq!(f_div(&KlGenerator, &p, &p).unwrap(), 0.0);
        let qp = f_div(&KlGenerator, &q, &p).unwrap();
        assert_relative_eq!(qp, 0.25 * 0.5f64.ln() + 0.75 * 1.5f64.ln(), epsilon = 1e-15);
        assert_relative_eq!(qp, 0.13081, epsilon = 1e-5);
    }

    #[test]
    fn f_div_errors() {
        assert!(matches!(
            f_div(&KlGenerator, &dist(&[0.5, 0.5]), &dist(&[1.0])),
            Err(Error::Shape { .. })
        ));
        assert!(matches!(
            f_div(&KlGenerator, &dist(&[1.0, 0.0]), &dist(&[0.5, 0.5])),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn dual_examples() {
        let kl: SharedFGenerator = Arc::new(KlGenerator);
        let d = dual_generator(kl.clone());
        assert_relative_eq!(d.eval(2.0), 2.0 * 2f64.ln(), epsilon = 1e-15);
        assert_eq!(d.eval(1.0), 0.0);
        let dd = dual_generator(d);
        for u in [0.1, 0.7, 1.0, 3.3, 12.0] {
            assert_relative_eq!(dd.eval(u), kl.eval(u), epsilon = 1e-14);
        }
    }

    #[test]
    fn j_symmetrize_examples() {
        let j = j_symmetrize(Arc::new(KlGenerator));
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[0.25, 0.75]);
        let expected = 0.5 * (kl(&p, &q).unwrap() + kl(&q, &p).unwrap());
        assert_relative_eq!(f_div(j.as_ref(), &p, &q).unwrap(), expected, epsilon = 1e-12);
        assert_relative_eq!(f_div(j.as_ref(), &p, &q).unwrap(), 0.13733, epsilon = 1e-5);
        assert_eq!(j.eval(1.0), 0.0);
        assert_relative_eq!(
            f_div(j.as_ref(), &p, &q).unwrap(),
            f_div(j.as_ref(), &q, &p).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn js_examples() {
        let p = dist(&[0.9, 0.1]);
        let q = dist(&[0.1, 0.9]);
        let v = js_symmetrize_div(&KlGenerator, &p, &q).unwrap();
        assert!(v > 0.0 && v < 2f64.ln());
        assert_eq!(js_symmetrize_div(&KlGenerator, &p, &p).unwrap(), 0.0);
        assert_relative_eq!(v, js_symmetrize_div(&KlGenerator, &q, &p).unwrap(), epsilon = 1e-15);
        // generator-level form agrees with the definition
        let g = js_symmetrize(Arc::new(KlGenerator));
        assert_relative_eq!(f_div(g.as_ref(), &p, &q).unwrap(), v, epsilon = 1e-12);
    }

    #[test]
    fn extended_kl_examples() {
        let p = dist(&[2.0, 1.0]);
        assert_eq!(extended_kl(&p, &p).unwrap(), 0.0);
        assert_relative_eq!(
            extended_kl(&p, &dist(&[1.0, 1.0])).unwrap(),
            2.0 * 2f64.ln() - 1.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(extended_kl(&p, &dist(&[1.0, 1.0])).unwrap(), 0.38629, epsilon = 1e-5);
        let a = DiscreteDist::normalized(vec![0.5, 0.5]).unwrap();
        let b = DiscreteDist::normalized(vec![0.25, 0.75]).unwrap();
        assert_relative_eq!(extended_kl(&a, &b).unwrap(), kl(&a, &b).unwrap(), epsilon = 1e-15);
    }

    #[test]
    fn normalization() {
        assert!(DiscreteDist::normalized(vec![0.5, 0.6]).is_err());
        assert!(DiscreteDist::new(vec![-0.1]).is_err());
        let d = dist(&[1.0, 3.0]).normalize().unwrap();
        assert!(d.is_normalized());
        assert_eq!(d.weights(), &[0.25, 0.75]);
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(make_f_generator("kl").unwrap().name(), "kl");
        assert_eq!(make_f_generator("f_chi2").unwrap().name(), "chi2");
        assert!(matches!(
            make_f_generator("hellinger"),
            Err(Error::UnknownFGenerator(_))
        ));
    }
}
