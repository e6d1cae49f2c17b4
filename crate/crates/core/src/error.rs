use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators do not share one element kind and action")]
    IncompatibleGenerators,
    #[error("empty generator list")]
    NoGenerators,
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("subgroup is not contained in the group")]
    SubgroupNotContained,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("an element of N does not normalize P")]
    DoesNotNormalize,
    #[error("unknown group spec: {0}")]
    UnknownSpec(String),
    #[error("unsupported Sylow subgroup: {0}")]
    UnsupportedSylow(String),
    #[error("Sylow subgroup is not C3 wr C3 in the required position: {0}")]
    WrongSylowShape(String),
    #[error("three-term test inconclusive: {0}")]
    Inconclusive(String),
    #[error("uniqueness searches are only run at l = 0 (asked for l = {0})")]
    UniquenessSearchSkipped(u32),
    #[error("poset relation has a cycle")]
    CyclicInput,
    #[error("functor check failed: {0}")]
    NotAFunctor(String),
    #[error("missing certificate: {0}")]
    MissingCertificate(String),
    #[error("table validation failed at {row}: {reason}")]
    ValidationFailure { row: String, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
