//! Strictly convex generators.
//!
//! A generator is a strictly convex function `F` on an open convex domain.
//! Every divergence in this crate is built from the graph of a generator:
//! ordinate gaps between the graph and tangent or chord lines.
//!
//! Built-in generators are looked up by their stable string name through a
//! [`GeneratorRegistry`]; user code can register additional ones.

mod builtin;
mod conjugate;
mod line;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::point::ParamPoint;

pub use builtin::{
    BurgNegentropy, LogSumExp, LogSumExpConjugate, Quadratic, QuadraticConjugate,
    ShannonConjugate, ShannonNegentropy,
};
pub use conjugate::{legendre_conjugate_numeric, ConjugateEstimate};
pub use line::{restrict_to_line, LineRestriction};

/// Interior margin used for domains with a boundary.
pub const DOMAIN_MARGIN: f64 = 1e-12;

/// Open convex domain of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// All of `R^D`.
    Reals,
    /// `x_i > 0` for every coordinate.
    PositiveOrthant,
    /// `x_i > 0` and `sum x_i < 1` (interior of the probability simplex,
    /// with the last coordinate implicit).
    OpenSimplex,
}

impl Domain {
    pub fn contains(&self, x: &[f64]) -> bool {
        if !x.iter().all(|v| v.is_finite()) {
            return false;
        }
        match self {
            Domain::Reals => true,
            Domain::PositiveOrthant => x.iter().all(|&v| v > DOMAIN_MARGIN),
            Domain::OpenSimplex => {
                x.iter().all(|&v| v > DOMAIN_MARGIN)
                    && x.iter().sum::<f64>() < 1.0 - DOMAIN_MARGIN
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Domain::Reals => "reals",
            Domain::PositiveOrthant => "positive orthant",
            Domain::OpenSimplex => "open simplex",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A strictly convex function on an open convex domain.
///
/// Implementors supply raw evaluation on coordinates already known to lie in
/// the domain; the provided methods add dimension and domain checks.
pub trait ConvexGenerator: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn dim(&self) -> usize;

    fn domain(&self) -> Domain;

    fn value(&self, x: &[f64]) -> f64;

    /// Closed-form gradient, when the generator has one.
    fn gradient(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }

    fn has_gradient(&self) -> bool {
        false
    }

    /// Closed-form Legendre conjugate, when known.
    fn conjugate(&self) -> Option<Box<dyn ConvexGenerator>> {
        None
    }

    fn check(&self, p: &ParamPoint) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::Shape {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        if !self.domain().contains(p.coords()) {
            return Err(Error::Domain {
                generator: self.name().to_string(),
                domain: self.domain().to_string(),
                point: p.coords().to_vec(),
            });
        }
        Ok(())
    }

    fn eval(&self, p: &ParamPoint) -> Result<f64> {
        self.check(p)?;
        Ok(self.value(p.coords()))
    }

    fn grad(&self, p: &ParamPoint) -> Result<Vec<f64>> {
        self.check(p)?;
        self.gradient(p.coords())
            .ok_or_else(|| Error::GradientRequired(self.name().to_string()))
    }
}

pub type GeneratorFactory = fn(usize) -> Box<dyn ConvexGenerator>;

/// Name-indexed table of generator constructors.
#[derive(Clone)]
pub struct GeneratorRegistry {
    factories: BTreeMap<String, GeneratorFactory>,
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        GeneratorRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register("quadratic", |d| Box::new(Quadratic::new(d)));
        reg.register("shannon_negentropy", |d| Box::new(ShannonNegentropy::new(d)));
        reg.register("burg_negentropy", |d| Box::new(BurgNegentropy::new(d)));
        reg.register("log_sum_exp", |d| Box::new(LogSumExp::new(d)));
        reg
    }

    pub fn register(&mut self, name: &str, factory: GeneratorFactory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn make(&self, name: &str, dim: usize) -> Result<Box<dyn ConvexGenerator>> {
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| Error::UnsupportedGenerator(name.to_string()))?;
        if dim < 1 {
            return Err(Error::InvalidDimension(dim));
        }
        Ok(factory(dim))
    }
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl fmt::Debug for GeneratorRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

/// Stable names of the built-in generators.
pub const BUILTIN_GENERATORS: [&str; 4] = [
    "quadratic",
    "shannon_negentropy",
    "burg_negentropy",
    "log_sum_exp",
];

fn builtin_registry() -> &'static GeneratorRegistry {
    static REGISTRY: OnceLock<GeneratorRegistry> = OnceLock::new();
    REGISTRY.get_or_init(GeneratorRegistry::with_builtins)
}

/// Builds one of the built-in generators by name.
pub fn make_builtin(name: &str, dim: usize) -> Result<Box<dyn ConvexGenerator>> {
    builtin_registry().make(name, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_eval() {
        let f = make_builtin("quadratic", 1).unwrap();
        assert_eq!(f.eval(&3.0.into()).unwrap(), 9.0);
    }

    #[test]
    fn shannon_eval_at_ones() {
        let f = make_builtin("shannon_negentropy", 2).unwrap();
        assert_eq!(f.eval(&vec![1.0, 1.0].into()).unwrap(), 0.0);
    }

    #[test]
    fn burg_grad() {
        let f = make_builtin("burg_negentropy", 1).unwrap();
        assert_eq!(f.grad(&2.0.into()).unwrap(), vec![-0.5]);
    }

    #[test]
    fn unknown_name_and_bad_dim() {
        assert_eq!(
            make_builtin("exponential", 1).unwrap_err(),
            Error::UnsupportedGenerator("exponential".into())
        );
        assert_eq!(
            make_builtin("quadratic", 0).unwrap_err(),
            Error::InvalidDimension(0)
        );
    }

    #[test]
    fn domain_checks() {
        let f = make_builtin("burg_negentropy", 2).unwrap();
        assert!(matches!(
            f.eval(&vec![1.0, 0.0].into()),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            f.eval(&vec![1.0].into()),
            Err(Error::Shape { expected: 2, got: 1 })
        ));
        assert!(Domain::OpenSimplex.contains(&[0.2, 0.3]));
        assert!(!Domain::OpenSimplex.contains(&[0.5, 0.5]));
        assert!(!Domain::Reals.contains(&[f64::NAN]));
    }

    #[test]
    fn registry_lists_builtins() {
        let names: Vec<_> = GeneratorRegistry::with_builtins()
            .names()
            .map(str::to_string)
            .collect();
        let mut expected: Vec<_> = BUILTIN_GENERATORS.iter().map(|s| s.to_string()).collect();
        expected.sort();
        assert_eq!(names, expected);
    }
}
