use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight vector is empty")]
    EmptyVector,

    #[error("negative weight {0}")]
    NegativeEntry(String),

    #[error("sum of squares is {0}, expected exactly 1")]
    NotUnitNorm(String),

    #[error("common denominator of the weights exceeds 2^60")]
    DenominatorTooLarge,

    #[error("dimension {n} exceeds the enumeration limit {limit}")]
    DimensionTooLarge { n: usize, limit: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("out of case range: {0}")]
    OutOfCaseRange(String),

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("rounding domination violated: {0}")]
    DominationViolated(String),

    #[error("lemma violated: {0}")]
    LemmaViolated(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
