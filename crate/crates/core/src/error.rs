use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// `Unsolvable`/infeasible outcomes are *not* errors; operations report those
/// through their result types. Errors mean the inputs violated a contract, a
/// resource budget was exceeded, or — for [`Error::TheoremViolation`] — an
/// internal cross-check failed that should be mathematically impossible.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("group spec mismatch: {0} vs {1}")]
    SpecMismatch(String, String),

    #[error("group of order {0} is too large for set operations")]
    GroupTooLarge(u64),

    #[error("empty set has no {0}")]
    EmptySet(&'static str),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("{what} out of range: {details}")]
    OutOfRange {
        what: &'static str,
        details: String,
    },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition not met: {0}")]
    NotApplicable(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
