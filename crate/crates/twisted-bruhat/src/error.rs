use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown root system type '{0}'")]
    UnknownType(String),
    #[error("'{0}' is not a root")]
    NotARoot(String),
    #[error("simple subsets are not orthogonal")]
    NotOrthogonal,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cover search did not stabilize on ray {ray}")]
    CertificationFailed { ray: String },
    #[error("elements are not comparable")]
    NotComparable,
    #[error("only {0} elements found before the search ball was exhausted")]
    TargetNotReached(usize),
    #[error("interval length {0} not supported")]
    UnsupportedLength(i64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("hemispaces lie in different blocks")]
    DifferentBlocks,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
