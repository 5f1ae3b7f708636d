use thiserror::Error;

/// Errors raised by generators, divergences, solvers and the clusterer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(String),

    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("shape mismatch: expected length {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("point {point:?} is outside the domain of {generator} ({domain})")]
    Domain {
        generator: String,
        domain: String,
        point: Vec<f64>,
    },

    #[error("degenerate line restriction: endpoints coincide")]
    DegenerateRestriction,

    #[error("generator {0} has no closed-form gradient")]
    GradientRequired(String),

    #[error("generator {0} has no closed-form conjugate")]
    ConjugateRequired(String),

    #[error("invalid chord parameters alpha={alpha}, beta={beta}: need alpha != beta, both in (0, 1]")]
    InvalidChordParams { alpha: f64, beta: f64 },

    #[error("invalid skew pair gamma={gamma}, delta={delta}: {reason}")]
    InvalidSkew {
        gamma: f64,
        delta: f64,
        reason: &'static str,
    },

    #[error("{div} needs --{param}")]
    MissingParameter { div: String, param: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root not bracketed on [{lo}, {hi}]: g(lo)={g_lo}, g(hi)={g_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("mean-value witness not found on ({lo}, {hi}): {detail}")]
    WitnessNotFound { lo: f64, hi: f64, detail: String },

    #[error("unknown divergence: {0}")]
    UnknownDivergence(String),

    #[error("unknown f-generator: {0}")]
    UnknownFGenerator(String),

    #[error("infeasible clustering: k={k} exceeds {distinct} distinct points")]
    Infeasible { k: usize, distinct: usize },

    #[error("at point {index}: {source}")]
    AtPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors caused by malformed requests (unknown names, bad
    /// configuration) as opposed to numerical or domain failures.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::UnsupportedGenerator(_)
            | Error::UnknownDivergence(_)
            | Error::UnknownFGenerator(_)
            | Error::InvalidDimension(_)
            | Error::MissingParameter { .. } => true,
            Error::AtPoint { source, .. } => source.is_usage(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
