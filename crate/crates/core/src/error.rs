use thiserror::Error;

/// Errors raised while building group data or running the verifier.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system component {component}: {reason}")]
    UnsupportedType { component: String, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("wrong side: expected a {expected} vector")]
    WrongSide { expected: &'static str },

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    #[error("cocharacter is not dominant")]
    NotDominant,

    #[error("invalid twist: {0}")]
    InvalidTwist(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("point is semistable, so its destabilizing complex is empty")]
    SemistablePoint,

    #[error("the verifier does not support this group: {0}")]
    UnsupportedVerifier(String),

    #[error("invalid group spec field `{field}`: {reason}")]
    Spec { field: String, reason: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
