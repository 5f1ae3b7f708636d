//! Runtime-selectable divergences.
//!
//! Every divergence in the crate is wrapped as a [`Divergence`] strategy and
//! registered under a stable identifier in a [`DivergenceRegistry`]. Compound
//! identifiers take an argument after a colon: `biskew:<inner>`,
//! `fdiv:<fname>`, `fdiv_dual:<fname>`, `fdiv_jsym:<fname>`,
//! `fdiv_jssym:<fname>`.

use std::collections::BTreeMap;
use std::fmt;

use crate::bregman::{
    biskew, bregman, bregman_chord, bregman_chord_approx, bregman_dual, bregman_tangent,
    ChordParams, SkewPair,
};
use crate::error::{Error, Result};
use crate::fdiv::{
    dual_generator, extended_kl, f_div, j_symmetrize, js_symmetrize_div, kl, make_f_generator,
    DiscreteDist, SharedFGenerator,
};
use crate::generators::ConvexGenerator;
use crate::jensen::{jensen, jensen_bregman, jensen_chord, jensen_skewed, JensenChordParams};
use crate::point::ParamPoint;

/// Scalar knobs shared by the parametric divergences. Each divergence reads
/// only the ones it needs.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DivParams {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
}

impl DivParams {
    pub fn chord(alpha: f64, beta: f64) -> Self {
        DivParams {
            alpha: Some(alpha),
            beta: Some(beta),
            ..Default::default()
        }
    }

    pub fn with_alpha_beta(mut self, alpha: f64, beta: f64) -> Self {
        self.alpha = Some(alpha);
        self.beta = Some(beta);
        self
    }
}

fn require(value: Option<f64>, param: &str, div: &str) -> Result<f64> {
    value.ok_or_else(|| Error::MissingParameter {
        div: div.into(),
        param: param.into(),
    })
}

/// A divergence `D(x : y)` between two points of a generator's domain.
pub trait Divergence: Send + Sync + fmt::Debug {
    fn id(&self) -> String;

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64>;
}

#[derive(Debug, Clone, Copy)]
pub struct Bregman;

impl Divergence for Bregman {
    fn id(&self) -> String {
        "bregman".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        bregman(f, x, y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BregmanDual;

impl Divergence for BregmanDual {
    fn id(&self) -> String {
        "bregman_dual".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        bregman_dual(f, x, y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BregmanChord(pub ChordParams);

impl Divergence for BregmanChord {
    fn id(&self) -> String {
        "bregman_chord".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        bregman_chord(f, x, y, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BregmanTangent(pub f64);

impl Divergence for BregmanTangent {
    fn id(&self) -> String {
        "bregman_tangent".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        bregman_tangent(f, x, y, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BregmanChordApprox(pub f64);

impl Divergence for BregmanChordApprox {
    fn id(&self) -> String {
        "bregman_chord_approx".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        bregman_chord_approx(f, x, y, self.0)
    }
}

/// Any divergence evaluated at two interpolants of its arguments.
#[derive(Debug)]
pub struct Biskewed {
    inner: Box<dyn Divergence>,
    skew: SkewPair,
}

impl Biskewed {
    pub fn new(inner: Box<dyn Divergence>, skew: SkewPair) -> Self {
        Biskewed { inner, skew }
    }
}

impl Divergence for Biskewed {
    fn id(&self) -> String {
        format!("biskew:{}", self.inner.id())
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        biskew(
            |a, b| self.inner.divergence(f, a, b),
            x,
            y,
            self.skew,
            f.domain(),
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Jensen;

impl Divergence for Jensen {
    fn id(&self) -> String {
        "jensen".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        jensen(f, x, y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct JensenSkewed(pub f64);

impl Divergence for JensenSkewed {
    fn id(&self) -> String {
        "jensen_skewed".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        jensen_skewed(f, x, y, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct JensenChord(pub JensenChordParams);

impl Divergence for JensenChord {
    fn id(&self) -> String {
        "jensen_chord".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        jensen_chord(f, x, y, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct JensenBregman(pub f64);

impl Divergence for JensenBregman {
    fn id(&self) -> String {
        "jensen_bregman".into()
    }

    fn divergence(&self, f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        jensen_bregman(f, x, y, self.0)
    }
}

fn as_dist(p: &ParamPoint) -> Result<DiscreteDist> {
    DiscreteDist::new(p.coords().to_vec())
}

/// f-divergence treating the coordinates of each point as positive weights.
/// The generator argument is ignored.
#[derive(Debug, Clone)]
pub struct FDivergence {
    id: String,
    f: SharedFGenerator,
}

impl FDivergence {
    pub fn new(id: impl Into<String>, f: SharedFGenerator) -> Self {
        FDivergence { id: id.into(), f }
    }
}

impl Divergence for FDivergence {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn divergence(&self, _f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        f_div(self.f.as_ref(), &as_dist(x)?, &as_dist(y)?)
    }
}

#[derive(Debug, Clone)]
pub struct JsSymmetrizedFDivergence {
    id: String,
    f: SharedFGenerator,
}

impl Divergence for JsSymmetrizedFDivergence {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn divergence(&self, _f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        js_symmetrize_div(self.f.as_ref(), &as_dist(x)?, &as_dist(y)?)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Kl;

impl Divergence for Kl {
    fn id(&self) -> String {
        "kl".into()
    }

    fn divergence(&self, _f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        kl(&as_dist(x)?, &as_dist(y)?)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExtendedKl;

impl Divergence for ExtendedKl {
    fn id(&self) -> String {
        "ekl".into()
    }

    fn divergence(&self, _f: &dyn ConvexGenerator, x: &ParamPoint, y: &ParamPoint) -> Result<f64> {
        extended_kl(&as_dist(x)?, &as_dist(y)?)
    }
}

/// Builds a divergence from its parameters and the optional argument after
/// the colon in a compound identifier.
pub type DivergenceFactory =
    fn(&DivergenceRegistry, &DivParams, Option<&str>) -> Result<Box<dyn Divergence>>;

/// Name-indexed table of divergence constructors.
#[derive(Clone)]
pub struct DivergenceRegistry {
    factories: BTreeMap<String, DivergenceFactory>,
}

fn no_arg(id: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        Some(a) => Err(Error::UnknownDivergence(format!("{id}:{a}"))),
        None => Ok(()),
    }
}

fn need_arg<'a>(id: &str, arg: Option<&'a str>) -> Result<&'a str> {
    arg.filter(|a| !a.is_empty())
        .ok_or_else(|| Error::UnknownDivergence(format!("{id} needs an argument, as in {id}:<name>")))
}

impl DivergenceRegistry {
    pub fn empty() -> Self {
        DivergenceRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = Self::empty();
        reg.register("bregman", |_, _, arg| {
            no_arg("bregman", arg)?;
            Ok(Box::new(Bregman))
        });
        reg.register("bregman_dual", |_, _, arg| {
            no_arg("bregman_dual", arg)?;
            Ok(Box::new(BregmanDual))
        });
        reg.register("bregman_chord", |_, p, arg| {
            no_arg("bregman_chord", arg)?;
            let alpha = require(p.alpha, "alpha", "bregman_chord")?;
            let beta = require(p.beta, "beta", "bregman_chord")?;
            Ok(Box::new(BregmanChord(ChordParams::new(alpha, beta)?)))
        });
        reg.register("bregman_tangent", |_, p, arg| {
            no_arg("bregman_tangent", arg)?;
            let alpha = require(p.alpha, "alpha", "bregman_tangent")?;
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "tangent alpha must lie in (0, 1], got {alpha}"
                )));
            }
            Ok(Box::new(BregmanTangent(alpha)))
        });
        reg.register("bregman_chord_approx", |_, p, arg| {
            no_arg("bregman_chord_approx", arg)?;
            let eps = require(p.epsilon, "epsilon", "bregman_chord_approx")?;
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "epsilon must lie in (0, 1), got {eps}"
                )));
            }
            Ok(Box::new(BregmanChordApprox(eps)))
        });
        reg.register("biskew", |reg, p, arg| {
            let inner_id = need_arg("biskew", arg)?;
            let gamma = require(p.gamma, "gamma", "biskew")?;
            let delta = require(p.delta, "delta", "biskew")?;
            let inner = reg.resolve(inner_id, p)?;
            Ok(Box::new(Biskewed::new(inner, SkewPair::new(gamma, delta)?)))
        });
        reg.register("jensen", |_, _, arg| {
            no_arg("jensen", arg)?;
            Ok(Box::new(Jensen))
        });
        reg.register("jensen_skewed", |_, p, arg| {
            no_arg("jensen_skewed", arg)?;
            let alpha = require(p.alpha, "alpha", "jensen_skewed")?;
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "alpha must lie in (0, 1), got {alpha}"
                )));
            }
            Ok(Box::new(JensenSkewed(alpha)))
        });
        reg.register("jensen_chord", |_, p, arg| {
            no_arg("jensen_chord", arg)?;
            let alpha = require(p.alpha, "alpha", "jensen_chord")?;
            let beta = require(p.beta, "beta", "jensen_chord")?;
            let gamma = require(p.gamma, "gamma", "jensen_chord")?;
            Ok(Box::new(JensenChord(JensenChordParams::new(alpha, beta, gamma)?)))
        });
        reg.register("jensen_bregman", |_, p, arg| {
            no_arg("jensen_bregman", arg)?;
            let alpha = require(p.alpha, "alpha", "jensen_bregman")?;
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "alpha must lie in (0, 1), got {alpha}"
                )));
            }
            Ok(Box::new(JensenBregman(alpha)))
        });
        reg.register("fdiv", |_, _, arg| {
            let name = need_arg("fdiv", arg)?;
            Ok(Box::new(FDivergence::new(format!("fdiv:{name}"), make_f_generator(name)?)))
        });
        reg.register("fdiv_dual", |_, _, arg| {
            let name = need_arg("fdiv_dual", arg)?;
            let f = dual_generator(make_f_generator(name)?);
            Ok(Box::new(FDivergence::new(format!("fdiv_dual:{name}"), f)))
        });
        reg.register("fdiv_jsym", |_, _, arg| {
            let name = need_arg("fdiv_jsym", arg)?;
            let f = j_symmetrize(make_f_generator(name)?);
            Ok(Box::new(FDivergence::new(format!("fdiv_jsym:{name}"), f)))
        });
        reg.register("fdiv_jssym", |_, _, arg| {
            let name = need_arg("fdiv_jssym", arg)?;
            Ok(Box::new(JsSymmetrizedFDivergence {
                id: format!("fdiv_jssym:{name}"),
                f: make_f_generator(name)?,
            }))
        });
        reg.register("kl", |_, _, arg| {
            no_arg("kl", arg)?;
            Ok(Box::new(Kl))
        });
        reg.register("ekl", |_, _, arg| {
            no_arg("ekl", arg)?;
            Ok(Box::new(ExtendedKl))
        });
        reg
    }

    pub fn register(&mut self, name: &str, factory: DivergenceFactory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    /// True if the head of `id` (before any colon) is registered.
    pub fn knows(&self, id: &str) -> bool {
        let head = id.split_once(':').map_or(id, |(h, _)| h);
        self.factories.contains_key(head)
    }

    pub fn resolve(&self, id: &str, params: &DivParams) -> Result<Box<dyn Divergence>> {
        let (head, arg) = match id.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (id, None),
        };
        let factory = self
            .factories
            .get(head)
            .ok_or_else(|| Error::UnknownDivergence(id.to_string()))?;
        factory(self, params, arg)
    }
}

impl Default for DivergenceRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl fmt::Debug for DivergenceRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_builtin;
    use approx::assert_relative_eq;

    fn eval(id: &str, params: DivParams, gen: &str, x: Vec<f64>, y: Vec<f64>) -> Result<f64> {
        let f = make_builtin(gen, x.len())?;
        let d = DivergenceRegistry::with_builtins().resolve(id, &params)?;
        d.divergence(f.as_ref(), &x.into(), &y.into())
    }

    #[test]
    fn resolves_all_plain_identifiers() {
        let reg = DivergenceRegistry::with_builtins();
        let params = DivParams {
            alpha: Some(0.25),
            beta: Some(0.75),
            gamma: Some(0.5),
            delta: Some(0.9),
            epsilon: Some(1e-3),
        };
        for id in [
            "bregman",
            "bregman_dual",
            "bregman_chord",
            "bregman_tangent",
            "bregman_chord_approx",
            "biskew:bregman",
            "biskew:bregman_chord",
            "jensen",
            "jensen_skewed",
            "jensen_chord",
            "jensen_bregman",
            "fdiv:kl",
            "fdiv_dual:tv",
            "fdiv_jsym:chi2",
            "fdiv_jssym:kl",
            "kl",
            "ekl",
        ] {
            let d = reg.resolve(id, &params).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert_eq!(d.id(), id);
        }
    }

    #[test]
    fn unknown_and_malformed_ids() {
        let reg = DivergenceRegistry::with_builtins();
        let p = DivParams::default();
        assert!(matches!(reg.resolve("hellinger", &p), Err(Error::UnknownDivergence(_))));
        assert!(matches!(reg.resolve("bregman:x", &p), Err(Error::UnknownDivergence(_))));
        assert!(matches!(reg.resolve("fdiv", &p), Err(Error::UnknownDivergence(_))));
        assert!(matches!(reg.resolve("fdiv:nope", &p), Err(Error::UnknownFGenerator(_))));
        assert!(!reg.knows("nope"));
        assert!(reg.knows("biskew:anything"));
    }

    #[test]
    fn missing_and_invalid_params() {
        let reg = DivergenceRegistry::with_builtins();
        assert!(matches!(
            reg.resolve("bregman_chord", &DivParams::default()),
            Err(Error::MissingParameter { ref param, .. }) if param == "alpha"
        ));
        assert!(matches!(
            reg.resolve("bregman_chord", &DivParams::chord(0.5, 0.5)),
            Err(Error::InvalidChordParams { .. })
        ));
    }

    #[test]
    fn strategy_values() {
        let v = eval("bregman_chord", DivParams::chord(0.25, 0.75), "quadratic", vec![0.0], vec![1.0]).unwrap();
        assert_relative_eq!(v, 0.1875, epsilon = 1e-15);
        let skew = DivParams {
            gamma: Some(0.25),
            delta: Some(0.75),
            ..Default::default()
        };
        let v = eval("biskew:bregman", skew, "quadratic", vec![0.0], vec![1.0]).unwrap();
        assert_eq!(v, 0.25);
        let v = eval("kl", DivParams::default(), "shannon_negentropy", vec![0.5, 0.5], vec![0.25, 0.75]).unwrap();
        assert_relative_eq!(v, 0.143841036, epsilon = 1e-9);
    }

    #[test]
    fn biskewed_f_divergence() {
        let skew = DivParams {
            gamma: Some(0.0),
            delta: Some(1.0),
            ..Default::default()
        };
        let a = eval("biskew:fdiv:kl", skew, "shannon_negentropy", vec![0.5, 0.5], vec![0.25, 0.75]).unwrap();
        let b = eval("kl", skew, "shannon_negentropy", vec![0.5, 0.5], vec![0.25, 0.75]).unwrap();
        assert_eq!(a, b);
    }
}
