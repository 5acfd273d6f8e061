use thiserror::Error;

use crate::torus::CertificationFailure;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("subspace is not contained in the ambient space")]
    NotASubspace,
    #[error("subspace is not closed under the commutator")]
    NotClosed,
    #[error("matrix is not a member of the ambient space")]
    NotMember,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("sl(2,K) in characteristic 2 has no gl/sl torus correspondence; see the sl2-char2 report")]
    UnsupportedSL2Char2,
    #[error("not a maximal torus: {0}")]
    NotMaximal(String),
    #[error("{what}: size {size} exceeds the configured bound {bound}")]
    BoundExceeded { what: &'static str, size: String, bound: u64 },
    #[error("class size {0} is not integral")]
    NonIntegralClassSize(String),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error("associative closure has dimension {dim}, expected {n}")]
    AssociativeClosureNotMaximal { dim: usize, n: usize },
    #[error("unexpected ideal: {0}")]
    UnexpectedIdeal(String),
    #[error("expected ideal not found: {0}")]
    MissingIdeal(String),
    #[error("certification failed: {0}")]
    Certification(Box<CertificationFailure>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<CertificationFailure> for Error {
    fn from(f: CertificationFailure) -> Self {
        Error::Certification(Box::new(f))
    }
}
