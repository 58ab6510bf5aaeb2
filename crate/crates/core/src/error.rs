use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("radius {0} outside the admissible range")]
    InvalidRadius(f64),
    #[error("start index {index} exceeds series order {order}")]
    InvalidIndex { index: usize, order: usize },
    #[error("inner series has nonzero constant term (|c0| = {0:e}); composition needs a Schwarz inner map")]
    NonSchwarzInner(f64),
    #[error("evaluator returned a non-finite value at z = {re} + {im}i")]
    EvaluationFailure { re: f64, im: f64 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("product factor within {0:e} of a pole")]
    PoleProximity(f64),
    #[error("covering map derivative vanishes at z = {re} + {im}i")]
    ZeroDerivative { re: f64, im: f64 },
    #[error("omitted points coincide (|a - b| = {0:e})")]
    DegenerateOmittedPoints(f64),
    #[error("h vanishes off the origin near z = {re} + {im}i (|h| = {modulus:e})")]
    ZeroDetected { re: f64, im: f64, modulus: f64 },
    #[error("domain {0} has no density function")]
    MissingDensity(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("report is missing data for {0}")]
    MissingData(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o failure: {0}")]
    IoFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoFailure(e.to_string())
    }
}
