//! Randomized property suites over the built-in generators.
//!
//! Each suite samples points and parameters from a seeded RNG, checks one
//! family of identities or inequalities, and reports the worst violation
//! magnitude it saw.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bregman::{
    bregman, bregman_chord, bregman_dual_via_conjugate, bregman_tangent, chord_gap_on_line,
    mean_value_witness, tangent_gap_on_line, ChordParams,
};
use crate::error::Result;
use crate::fdiv::{dual_generator, extended_kl, f_div, make_f_generator, DiscreteDist};
use crate::generators::{make_builtin, restrict_to_line, ConvexGenerator, Domain};
use crate::jensen::{jensen, jensen_bregman, jensen_chord, jensen_skewed, JensenChordParams};
use crate::numerics::{central_diff_grad, DEFAULT_FD_STEP};
use crate::point::ParamPoint;

pub const REAL_RANGE: (f64, f64) = (-2.0, 2.0);
pub const POSITIVE_RANGE: (f64, f64) = (0.25, 4.0);

pub const SUITES: [&str; 9] = [
    "sandwich",
    "swap_symmetry",
    "limit_bregman",
    "limit_tangent",
    "mean_value",
    "dual_identity",
    "jensen",
    "fdiv",
    "gradient",
];

/// (generator, dimension) pairs exercised by the chord suites.
pub const CHORD_SUITE_GENERATORS: [(&str, usize); 7] = [
    ("quadratic", 1),
    ("quadratic", 3),
    ("shannon_negentropy", 1),
    ("shannon_negentropy", 3),
    ("burg_negentropy", 1),
    ("burg_negentropy", 3),
    ("log_sum_exp", 3),
];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    /// Largest violation of the suite's bound (zero when every check holds
    /// with room to spare), or the worst observed deviation for equality
    /// checks.
    pub worst: f64,
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<14} {}  worst={:.3e}  {}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.worst,
            self.detail
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 200, seed: 0 }
    }
}

pub fn sample_point<R: Rng>(domain: Domain, dim: usize, rng: &mut R) -> ParamPoint {
    let (lo, hi) = match domain {
        Domain::Reals => REAL_RANGE,
        Domain::PositiveOrthant => POSITIVE_RANGE,
        Domain::OpenSimplex => (0.05, 0.9 / dim as f64),
    };
    (0..dim).map(|_| rng.gen_range(lo..hi)).collect::<Vec<_>>().into()
}

/// A uniformly random valid chord parameter pair in `(0, 1]`.
pub fn sample_chord_params<R: Rng>(rng: &mut R) -> ChordParams {
    loop {
        let a = 1.0 - rng.gen::<f64>();
        let b = 1.0 - rng.gen::<f64>();
        if let Ok(cp) = ChordParams::new(a, b) {
            return cp;
        }
    }
}

fn distinct_pair<R: Rng>(f: &dyn ConvexGenerator, rng: &mut R) -> (ParamPoint, ParamPoint) {
    loop {
        let a = sample_point(f.domain(), f.dim(), rng);
        let b = sample_point(f.domain(), f.dim(), rng);
        if a.max_abs_diff(&b) > 1e-3 {
            return (a, b);
        }
    }
}

fn ratios_ok(errors: &[f64], lo: f64, hi: f64) -> (bool, Vec<f64>) {
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let ok = ratios.iter().all(|r| (lo..=hi).contains(r));
    (ok, ratios)
}

pub fn run_suite(name: &str, opts: VerifyOptions) -> Option<Result<SuiteReport>> {
    let report = match name {
        "sandwich" => sandwich(opts),
        "swap_symmetry" => swap_symmetry(opts),
        "limit_bregman" => limit_bregman(opts),
        "limit_tangent" => limit_tangent(opts),
        "mean_value" => mean_value(opts),
        "dual_identity" => dual_identity(opts),
        "jensen" => jensen_identities(opts),
        "fdiv" => fdiv_suite(opts),
        "gradient" => gradient(opts),
        _ => return None,
    };
    Some(report)
}

pub fn run_all(opts: VerifyOptions) -> Result<Vec<SuiteReport>> {
    SUITES
        .iter()
        .map(|s| run_suite(s, opts).expect("listed suite"))
        .collect()
}

fn report(name: &str, passed: bool, worst: f64, detail: String) -> Result<SuiteReport> {
    Ok(SuiteReport {
        name: name.into(),
        passed,
        worst,
        detail,
    })
}

/// `0 <= B^{a,b} <= B_F + 1e-12`.
pub fn sandwich(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = 0.0_f64;
    let mut count = 0;
    for (name, dim) in CHORD_SUITE_GENERATORS {
        let f = make_builtin(name, dim)?;
        for _ in 0..opts.trials {
            let (t1, t2) = distinct_pair(f.as_ref(), &mut rng);
            let upper = bregman(f.as_ref(), &t1, &t2)?;
            for _ in 0..20 {
                let v = bregman_chord(f.as_ref(), &t1, &t2, sample_chord_params(&mut rng))?;
                worst = worst.max(-v).max(v - upper - 1e-12);
                count += 1;
            }
        }
    }
    report("sandwich", worst <= 0.0, worst.max(0.0), format!("{count} checks"))
}

/// `B^{a,b} = B^{b,a}` to 1e-12.
pub fn swap_symmetry(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = 0.0_f64;
    for (name, dim) in CHORD_SUITE_GENERATORS {
        let f = make_builtin(name, dim)?;
        for _ in 0..opts.trials {
            let (t1, t2) = distinct_pair(f.as_ref(), &mut rng);
            for _ in 0..20 {
                let cp = sample_chord_params(&mut rng);
                let a = bregman_chord(f.as_ref(), &t1, &t2, cp)?;
                let b = bregman_chord(f.as_ref(), &t1, &t2, cp.swapped())?;
                worst = worst.max((a - b).abs());
            }
        }
    }
    report("swap_symmetry", worst <= 1e-12, worst, "tol 1e-12".into())
}

pub const LIMIT_EPSILONS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

/// `|B^{1-eps,1} - B_F|` decays linearly in eps.
pub fn limit_bregman(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut passed = true;
    let mut detail = Vec::new();
    let mut worst_ratio_miss = 0.0_f64;
    for (name, dim) in CHORD_SUITE_GENERATORS {
        let f = make_builtin(name, dim)?;
        let pairs: Vec<_> = (0..50).map(|_| distinct_pair(f.as_ref(), &mut rng)).collect();
        let mut errors = Vec::new();
        for eps in LIMIT_EPSILONS {
            let cp = ChordParams::new(1.0 - eps, 1.0)?;
            let mut e = 0.0_f64;
            for (t1, t2) in &pairs {
                let exact = bregman(f.as_ref(), t1, t2)?;
                e = e.max((bregman_chord(f.as_ref(), t1, t2, cp)? - exact).abs());
            }
            errors.push(e);
        }
        let (ok, ratios) = ratios_ok(&errors, 5.0, 20.0);
        for r in &ratios {
            worst_ratio_miss = worst_ratio_miss.max((5.0 - r).max(r - 20.0));
        }
        passed &= ok;
        if !ok {
            detail.push(format!("{name}/{dim}: ratios {ratios:?}"));
        }
    }
    report(
        "limit_bregman",
        passed,
        worst_ratio_miss.max(0.0),
        if detail.is_empty() { "ratios in [5, 20]".into() } else { detail.join("; ") },
    )
}

/// `|B^{a, a+eps} - B^a|` decays linearly in eps at `a = 0.4`.
pub fn limit_tangent(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let alpha = 0.4;
    let mut passed = true;
    let mut detail = Vec::new();
    let mut worst_ratio_miss = 0.0_f64;
    for (name, dim) in CHORD_SUITE_GENERATORS {
        let f = make_builtin(name, dim)?;
        let pairs: Vec<_> = (0..50).map(|_| distinct_pair(f.as_ref(), &mut rng)).collect();
        let mut errors = Vec::new();
        for eps in [1e-2, 1e-3, 1e-4] {
            let cp = ChordParams::new(alpha, alpha + eps)?;
            let mut e = 0.0_f64;
            for (t1, t2) in &pairs {
                let tangent = bregman_tangent(f.as_ref(), t1, t2, alpha)?;
                e = e.max((bregman_chord(f.as_ref(), t1, t2, cp)? - tangent).abs());
            }
            errors.push(e);
        }
        let (ok, ratios) = ratios_ok(&errors, 5.0, 20.0);
        for r in &ratios {
            worst_ratio_miss = worst_ratio_miss.max((5.0 - r).max(r - 20.0));
        }
        passed &= ok;
        if !ok {
            detail.push(format!("{name}/{dim}: ratios {ratios:?}"));
        }
    }
    report(
        "limit_tangent",
        passed,
        worst_ratio_miss.max(0.0),
        if detail.is_empty() { "ratios in [5, 20]".into() } else { detail.join("; ") },
    )
}

/// Witness slope matches the chord slope, and the tangent gap at the witness
/// is compared against the chord gap.
///
/// The tangent at the witness is parallel to the chord but offset from it by
/// `G(lambda*) - G(alpha) - slope (lambda* - alpha)`, so the direct gap
/// comparison fails for every strictly convex generator. The detail line also
/// reports how well the offset-corrected identity holds.
pub fn mean_value(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst_slope = 0.0_f64;
    let mut worst_gap = 0.0_f64;
    let mut worst_corrected = 0.0_f64;
    let names = ["quadratic", "shannon_negentropy", "burg_negentropy", "log_sum_exp"];
    for i in 0..opts.trials.clamp(1, 100) {
        let f = make_builtin(names[i % names.len()], 1)?;
        let (t1, t2) = distinct_pair(f.as_ref(), &mut rng);
        let cp = sample_chord_params(&mut rng);
        let w = mean_value_witness(f.as_ref(), &t1, &t2, cp)?;
        let g = restrict_to_line(f.as_ref(), &t1, &t2)?;
        let slope = (g.eval(cp.alpha())? - g.eval(cp.beta())?) / (cp.alpha() - cp.beta());
        worst_slope = worst_slope.max((g.derivative(w)? - slope).abs());
        let tangent = tangent_gap_on_line(&g, w)?;
        let chord = chord_gap_on_line(&g, cp)?;
        let offset = g.eval(w)? - g.eval(cp.alpha())? - slope * (w - cp.alpha());
        worst_gap = worst_gap.max((tangent - chord).abs());
        worst_corrected = worst_corrected.max((tangent + offset - chord).abs());
    }
    report(
        "mean_value",
        worst_slope <= 1e-9 && worst_gap <= 1e-8,
        worst_slope.max(worst_gap),
        format!(
            "slope dev {worst_slope:.2e} (tol 1e-9), gap dev {worst_gap:.2e} (tol 1e-8), \
             offset-corrected gap dev {worst_corrected:.2e}"
        ),
    )
}

/// `B_F(theta2 : theta1) = B_{F*}(grad F(theta1) : grad F(theta2))`.
pub fn dual_identity(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = 0.0_f64;
    for (name, dim) in [
        ("quadratic", 1),
        ("quadratic", 3),
        ("shannon_negentropy", 1),
        ("shannon_negentropy", 3),
        ("log_sum_exp", 3),
    ] {
        let f = make_builtin(name, dim)?;
        for _ in 0..opts.trials.clamp(1, 100) {
            let (t1, t2) = distinct_pair(f.as_ref(), &mut rng);
            let lhs = bregman(f.as_ref(), &t2, &t1)?;
            let rhs = bregman_dual_via_conjugate(f.as_ref(), &t1, &t2)?;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    report("dual_identity", worst <= 1e-9, worst, "tol 1e-9".into())
}

/// Jensen-Bregman at one half, scaled skew limit, and Jensen chord checks.
pub fn jensen_identities(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst_jb = 0.0_f64;
    let mut worst_chord_neg = 0.0_f64;
    let mut worst_chord_eq = 0.0_f64;
    let mut ratio_fail = Vec::new();
    for (name, dim) in CHORD_SUITE_GENERATORS {
        let f = make_builtin(name, dim)?;
        let pairs: Vec<_> = (0..50).map(|_| distinct_pair(f.as_ref(), &mut rng)).collect();
        for (t1, t2) in &pairs {
            let j = jensen(f.as_ref(), t1, t2)?;
            worst_jb = worst_jb.max((jensen_bregman(f.as_ref(), t1, t2, 0.5)? - j).abs());
        }
        let mut errors = Vec::new();
        for a in [1e-1, 1e-2, 1e-3] {
            let mut e = 0.0_f64;
            for (t1, t2) in &pairs {
                let rev = bregman(f.as_ref(), t2, t1)?;
                e = e.max((jensen_skewed(f.as_ref(), t1, t2, a)? / a - rev).abs());
            }
            errors.push(e);
        }
        let (ok, ratios) = ratios_ok(&errors, 5.0, 20.0);
        if !ok {
            ratio_fail.push(format!("{name}/{dim}: {ratios:?}"));
        }
        for _ in 0..opts.trials.max(500) / CHORD_SUITE_GENERATORS.len() + 1 {
            let (t1, t2) = distinct_pair(f.as_ref(), &mut rng);
            let mut abc = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
            abc.sort_by(f64::total_cmp);
            let jcp = JensenChordParams::new(abc[0], abc[2], abc[1])?;
            worst_chord_neg = worst_chord_neg.max(-jensen_chord(f.as_ref(), &t1, &t2, jcp)?);
            let a = rng.gen_range(0.01..0.99);
            let same = JensenChordParams::new(a, a, a)?;
            worst_chord_eq = worst_chord_eq.max(
                (jensen_chord(f.as_ref(), &t1, &t2, same)? - jensen_skewed(f.as_ref(), &t1, &t2, a)?).abs(),
            );
        }
    }
    let passed = worst_jb <= 1e-12 && worst_chord_neg <= 0.0 && worst_chord_eq <= 1e-12 && ratio_fail.is_empty();
    let mut detail = format!(
        "JB(1/2)-J {worst_jb:.2e}, chord min {:.2e}, chord vs skewed {worst_chord_eq:.2e}",
        -worst_chord_neg
    );
    if !ratio_fail.is_empty() {
        detail.push_str(&format!("; scaled-limit ratios {}", ratio_fail.join(", ")));
    }
    report(
        "jensen",
        passed,
        worst_jb.max(worst_chord_neg.max(0.0)).max(worst_chord_eq),
        detail,
    )
}

fn random_simplex<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

/// Dual generator swaps arguments; extended KL is the Shannon Bregman divergence.
pub fn fdiv_suite(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst_dual = 0.0_f64;
    let mut worst_ekl = 0.0_f64;
    for fname in ["kl", "tv", "chi2"] {
        let f = make_f_generator(fname)?;
        let fd = dual_generator(f.clone());
        for dim in [2, 5] {
            for _ in 0..opts.trials {
                let p = DiscreteDist::new(random_simplex(dim, &mut rng))?;
                let q = DiscreteDist::new(random_simplex(dim, &mut rng))?;
                let a = f_div(fd.as_ref(), &p, &q)?;
                let b = f_div(f.as_ref(), &q, &p)?;
                worst_dual = worst_dual.max((a - b).abs());
            }
        }
    }
    for dim in [2, 5] {
        let shannon = make_builtin("shannon_negentropy", dim)?;
        for _ in 0..opts.trials {
            let p = sample_point(Domain::PositiveOrthant, dim, &mut rng);
            let q = sample_point(Domain::PositiveOrthant, dim, &mut rng);
            let e = extended_kl(
                &DiscreteDist::new(p.coords().to_vec())?,
                &DiscreteDist::new(q.coords().to_vec())?,
            )?;
            worst_ekl = worst_ekl.max((e - bregman(shannon.as_ref(), &p, &q)?).abs());
        }
    }
    let worst = worst_dual.max(worst_ekl);
    report(
        "fdiv",
        worst <= 1e-12,
        worst,
        format!("dual {worst_dual:.2e}, eKL vs Bregman {worst_ekl:.2e} (tol 1e-12)"),
    )
}

/// Closed-form gradients against central differences, relative 1e-6.
pub fn gradient(opts: VerifyOptions) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut worst = 0.0_f64;
    for (name, dim) in CHORD_SUITE_GENERATORS {
        let f = make_builtin(name, dim)?;
        for _ in 0..opts.trials.clamp(1, 100) {
            let x = sample_point(f.domain(), dim, &mut rng);
            let g = f.grad(&x)?;
            let fd = central_diff_grad(f.as_ref(), &x, DEFAULT_FD_STEP)?;
            for (a, b) in g.iter().zip(&fd) {
                worst = worst.max((a - b).abs() / a.abs().max(1.0));
            }
        }
    }
    report("gradient", worst <= 1e-6, worst, "relative tol 1e-6".into())
}
