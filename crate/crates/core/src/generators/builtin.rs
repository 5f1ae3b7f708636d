use super::{ConvexGenerator, Domain};

/// `F(x) = sum x_i^2`.
#[derive(Clone, Debug)]
pub struct Quadratic {
    dim: usize,
}

impl Quadratic {
    pub fn new(dim: usize) -> Self {
        Quadratic { dim }
    }
}

impl ConvexGenerator for Quadratic {
    fn name(&self) -> &str {
        "quadratic"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        Domain::Reals
    }

    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        Some(x.iter().map(|v| 2.0 * v).collect())
    }

    fn has_gradient(&self) -> bool {
        true
    }

    fn conjugate(&self) -> Option<Box<dyn ConvexGenerator>> {
        Some(Box::new(QuadraticConjugate { dim: self.dim }))
    }
}

/// `F*(y) = sum y_i^2 / 4`, the conjugate of [`Quadratic`].
#[derive(Clone, Debug)]
pub struct QuadraticConjugate {
    dim: usize,
}

impl QuadraticConjugate {
    pub fn new(dim: usize) -> Self {
        QuadraticConjugate { dim }
    }
}

impl ConvexGenerator for QuadraticConjugate {
    fn name(&self) -> &str {
        "quadratic_conjugate"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        Domain::Reals
    }

    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v / 4.0).sum()
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        Some(x.iter().map(|v| v / 2.0).collect())
    }

    fn has_gradient(&self) -> bool {
        true
    }

    fn conjugate(&self) -> Option<Box<dyn ConvexGenerator>> {
        Some(Box::new(Quadratic { dim: self.dim }))
    }
}

/// Shannon negentropy `F(x) = sum x_i log x_i` on the positive orthant.
/// Its Bregman divergence is the extended Kullback-Leibler divergence.
#[derive(Clone, Debug)]
pub struct ShannonNegentropy {
    dim: usize,
}

impl ShannonNegentropy {
    pub fn new(dim: usize) -> Self {
        ShannonNegentropy { dim }
    }
}

impl ConvexGenerator for ShannonNegentropy {
    fn name(&self) -> &str {
        "shannon_negentropy"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        Domain::PositiveOrthant
    }

    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v.ln()).sum()
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        Some(x.iter().map(|v| 1.0 + v.ln()).collect())
    }

    fn has_gradient(&self) -> bool {
        true
    }

    fn conjugate(&self) -> Option<Box<dyn ConvexGenerator>> {
        Some(Box::new(ShannonConjugate { dim: self.dim }))
    }
}

/// `F*(y) = sum exp(y_i - 1)`, the conjugate of [`ShannonNegentropy`].
#[derive(Clone, Debug)]
pub struct ShannonConjugate {
    dim: usize,
}

impl ShannonConjugate {
    pub fn new(dim: usize) -> Self {
        ShannonConjugate { dim }
    }
}

impl ConvexGenerator for ShannonConjugate {
    fn name(&self) -> &str {
        "shannon_conjugate"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        Domain::Reals
    }

    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| (v - 1.0).exp()).sum()
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        Some(x.iter().map(|v| (v - 1.0).exp()).collect())
    }

    fn has_gradient(&self) -> bool {
        true
    }

    fn conjugate(&self) -> Option<Box<dyn ConvexGenerator>> {
        Some(Box::new(ShannonNegentropy { dim: self.dim }))
    }
}

/// Burg negentropy `F(x) = -sum log x_i`; its Bregman divergence is the
/// Itakura-Saito divergence.
#[derive(Clone, Debug)]
pub struct BurgNegentropy {
    dim: usize,
}

impl BurgNegentropy {
    pub fn new(dim: usize) -> Self {
        BurgNegentropy { dim }
    }
}

impl ConvexGenerator for BurgNegentropy {
    fn name(&self) -> &str {
        "burg_negentropy"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        Domain::PositiveOrthant
    }

    fn value(&self, x: &[f64]) -> f64 {
        -x.iter().map(|v| v.ln()).sum::<f64>()
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        Some(x.iter().map(|v| -1.0 / v).collect())
    }

    fn has_gradient(&self) -> bool {
        true
    }
}

/// `F(x) = log(1 + sum exp(x_i))`, a non-separable generator on `R^D`.
#[derive(Clone, Debug)]
pub struct LogSumExp {
    dim: usize,
}

impl LogSumExp {
    pub fn new(dim: usize) -> Self {
        LogSumExp { dim }
    }
}

// Shift by max(0, max x) so neither the implicit 0 term nor any x_i overflows.
fn shifted_exps(x: &[f64]) -> (f64, f64, Vec<f64>) {
    let shift = x.iter().copied().fold(0.0_f64, f64::max);
    let exps: Vec<f64> = x.iter().map(|v| (v - shift).exp()).collect();
    let total = (-shift).exp() + exps.iter().sum::<f64>();
    (shift, total, exps)
}

impl ConvexGenerator for LogSumExp {
    fn name(&self) -> &str {
        "log_sum_exp"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        Domain::Reals
    }

    fn value(&self, x: &[f64]) -> f64 {
        let (shift, total, _) = shifted_exps(x);
        shift + total.ln()
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let (_, total, exps) = shifted_exps(x);
        Some(exps.into_iter().map(|e| e / total).collect())
    }

    fn has_gradient(&self) -> bool {
        true
    }

    fn conjugate(&self) -> Option<Box<dyn ConvexGenerator>> {
        Some(Box::new(LogSumExpConjugate { dim: self.dim }))
    }
}

/// Conjugate of [`LogSumExp`]: the negentropy of the categorical
/// distribution `(y_1, .., y_D, 1 - sum y_i)` on the open simplex.
#[derive(Clone, Debug)]
pub struct LogSumExpConjugate {
    dim: usize,
}

impl LogSumExpConjugate {
    pub fn new(dim: usize) -> Self {
        LogSumExpConjugate { dim }
    }
}

impl ConvexGenerator for LogSumExpConjugate {
    fn name(&self) -> &str {
        "log_sum_exp_conjugate"
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn domain(&self) -> Domain {
        Domain::OpenSimplex
    }

    fn value(&self, x: &[f64]) -> f64 {
        let rest = 1.0 - x.iter().sum::<f64>();
        x.iter().map(|v| v * v.ln()).sum::<f64>() + rest * rest.ln()
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let log_rest = (1.0 - x.iter().sum::<f64>()).ln();
        Some(x.iter().map(|v| v.ln() - log_rest).collect())
    }

    fn has_gradient(&self) -> bool {
        true
    }

    fn conjugate(&self) -> Option<Box<dyn ConvexGenerator>> {
        Some(Box::new(LogSumExp { dim: self.dim }))
    }
}
