use thiserror::Error;

/// Errors raised by the certification engine and its front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("parameter {value} lies outside the range [{lo}, {hi}]")]
    OutOfRange { value: String, lo: String, hi: String },

    #[error("invalid interval: lower end {lo} exceeds upper end {hi}")]
    InvalidInterval { lo: String, hi: String },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("representative is not a member of the interval polynomial: {0}")]
    NotMember(String),

    #[error("representative must have no imaginary roots")]
    ImaginaryRepresentative,

    #[error("R2 must hold before region analysis")]
    R2NotCertified,

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("zero too close to boundary; refine the disk")]
    ZeroOnBoundary,

    #[error("parity violation: uncovered real-axis crossing")]
    ParityViolation,

    #[error("selector is not hyperbolic at alpha = {0}")]
    NotHyperbolic(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid problem: {}", .0.join("; "))]
    InvalidProblem(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
