use thiserror::Error;

/// Errors raised while constructing or operating on finite groups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group order {order} exceeds the configured order cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("element index {index} is out of range for a group of order {order}")]
    OutOfRange { index: usize, order: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("{0} is not a prime")]
    NotPrime(usize),
}

/// Errors from graph queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("element {0} is not a vertex of this graph")]
    NotAVertex(usize),

    #[error("unknown export format `{0}` (expected `dot` or `json`)")]
    UnknownFormat(String),

    #[error("unknown graph kind `{0}` (expected `nilpotent`, `reduced` or `commuting`)")]
    UnknownKind(String),

    #[error("malformed graph export: {0}")]
    Malformed(String),
}

/// Errors from the verification harness.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error("no order-54 candidate has a Fitting subgroup of order 27 and a connected reduced graph of diameter 3")]
    WitnessNotFound,

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("catalog parse error: {0}")]
    Catalog(#[from] serde_json::Error),
}
