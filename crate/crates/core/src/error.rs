use thiserror::Error;

/// Errors produced by bound computations, pattern handling and graph I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {value} outside [0,1] (tolerance 1e-12)")]
    Domain { value: f64 },

    #[error("pattern is not connected")]
    NotConnected,

    #[error("pattern is not simple: {0}")]
    NotSimple(String),

    #[error("edge ({u},{v}) references a vertex outside 0..{k}")]
    VertexOutOfRange { u: usize, v: usize, k: usize },

    #[error("pattern has {k} vertices; supported range is 2..=8")]
    PatternSize { k: usize },

    #[error("pattern on {k} vertices too large for copy counting (max 5)")]
    PatternTooLarge { k: usize },

    #[error("infeasible ambiguity set: mad {d} exceeds maximum {d_max} for (a, mu, h_c)")]
    Infeasible { d: f64, d_max: f64 },

    #[error("no distribution on the support grid matches the moment constraints")]
    GridInfeasible,

    #[error("power-law exponent {tau} unsupported (require tau > 1)")]
    ExponentUnsupported { tau: f64 },

    #[error("power-law exponent {tau} outside required range ({lo}, {hi})")]
    ExponentOutOfRange { tau: f64, lo: f64, hi: f64 },

    #[error("regime violation: {0}")]
    RegimeViolation(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("computation too large: {0}")]
    TooLarge(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
