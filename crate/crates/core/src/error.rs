use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("discriminant is not negative")]
    NotNegativeDiscriminant,
    #[error("no root of the polynomial lies in the given interval")]
    NoRootInInterval,
    #[error("interval isolates {0} roots, expected exactly one")]
    AmbiguousInterval(usize),

    #[error("elements belong to incompatible towers")]
    TowerMismatch,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("no value assigned to generator {0}")]
    MissingAssignment(String),
    #[error("generator {0} is not covered by the automorphism")]
    UncoveredGenerator(String),
    #[error("image matrix is singular")]
    SingularImageMatrix,
    #[error("generator name {0} is already in use")]
    NameCollision(String),
    #[error("invalid generator name {0:?}")]
    InvalidName(String),

    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DomainMismatch(String),

    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("element is zero")]
    ZeroElement,
    #[error("no distinct-eigenvalue shift found after {0} attempts")]
    ShiftNotFound(usize),
    #[error("characteristic polynomial has repeated roots")]
    RepeatedEigenvalues,
    #[error("unsupported eigenvalue splitting: {0}")]
    UnsupportedSplitting(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("constructed identity failed exact verification: {0}")]
    IdentityViolated(String),

    #[error("group of order {size} exceeds the enumeration cap {cap}")]
    EnumerationCapExceeded { size: u128, cap: u128 },
    #[error("unsupported finite field GF({p}^{k})")]
    UnsupportedField { p: u32, k: u32 },
    #[error("invalid automorphism descriptor: {0}")]
    InvalidAutomorphism(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }
}
