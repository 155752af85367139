use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no square class")]
    ZeroSquareClass,
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("operation not supported over {0}")]
    UnsupportedField(String),
    #[error("cannot factor the zero polynomial")]
    ZeroFactorization,
    #[error("cannot isolate roots of the zero polynomial")]
    ZeroIsolation,
    #[error("resultant of two zero polynomials is undefined")]
    UndefinedResultant,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("scaling by zero")]
    ZeroScale,
    #[error("no canonical reduction of GW classes over {0}")]
    NoCanonicalReduction(String),
    #[error("characteristic {p} divides a required inverse (n = {n}) and no integral lift is available")]
    LiftRequired { p: u64, n: usize },
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("Newton step is not invertible at the expansion point")]
    SingularExpansion,
    #[error("lifted recursion produced a coefficient with {p} in the denominator at n = {n}")]
    NonIntegralLift { p: u64, n: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("theorem hypothesis failed: {0}")]
    TheoremHypothesisFailed(String),
    #[error("point is not a root of the inflection polynomial")]
    NotAnInflectionPoint,
    #[error("series truncated at order {0} is identically zero")]
    TruncationTooShort(usize),
    #[error("impossible global class: {0}")]
    ImpossibleClass(String),
    #[error("prime {0} has bad reduction for this polynomial")]
    BadReductionPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
