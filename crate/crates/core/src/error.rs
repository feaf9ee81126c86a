use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division of a polynomial by a linear form left remainder {0}")]
    NotDivisible(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("parameter c = -1 is excluded")]
    SingularC,
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("unsupported root system: {0}")]
    UnsupportedGroup(String),
    #[error("multiplicity function is not constant on reflection orbits")]
    NotInvariant,
    #[error("singular parameter locus: {0}")]
    SingularLocus(String),
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has no unique solution")]
    Underdetermined,
    #[error("component decomposition is not unique")]
    NotUnique,
    #[error("incompatible exact-scalar bases {0} and {1}")]
    IncompatibleBase(String, String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
