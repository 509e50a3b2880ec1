use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{op}: degree {degree} not allowed")]
    Degree { op: &'static str, degree: usize },
    #[error("invalid Hermitian space: {0}")]
    InvalidSpace(String),
    #[error("{what}: residual {residual:.3e} exceeds tolerance")]
    Membership { what: String, residual: f64 },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("structure is not of class G1 (|N̂| = {0:.3e})")]
    NotG1(f64),
    #[error("class mismatch: {0}")]
    ClassMismatch(String),
    #[error("unknown builtin model `{0}`")]
    UnknownModel(String),
    #[error("cannot certify: {0}")]
    CannotCertify(String),
    #[error("malformed input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
