use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The reflexive-transitive closure of the input relation is not antisymmetric.
    #[error("order relation has a cycle through {0} and {1}")]
    Cycle(String, String),

    #[error("duplicate element name {0:?}")]
    DuplicateName(String),

    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("poset has {size} elements, cap is {cap}")]
    SizeLimit { size: usize, cap: usize },

    #[error("enumeration exceeded cap of {cap} items")]
    EnumerationOverflow { cap: usize },

    #[error("closure exceeded cap of {cap} elements")]
    ClosureOverflow { cap: usize },

    #[error("support of {size} elements exceeds cap of {cap}")]
    SupportLimit { size: usize, cap: usize },

    #[error("operands live over different posets")]
    PosetMismatch,

    #[error("set is not up-closed: {0}")]
    NotUpClosed(String),

    #[error("map is not order-preserving: {0} <= {1} but images are not ordered")]
    NotOrderPreserving(String, String),

    #[error("inclusion is not an order embedding: {0}")]
    NotAnEmbedding(String),

    #[error("bad front arity: k = {k}, horizon = {horizon}")]
    BadArity { k: usize, horizon: usize },

    #[error("premise failed: {0}")]
    PremiseFailed(String),

    #[error("poset is not directed: {0} and {1} have no common upper bound")]
    NotDirected(String, String),

    #[error("chain is not cofinal: {0}")]
    NotCofinal(String),

    #[error("parse error: {0}")]
    Parse(String),
}
