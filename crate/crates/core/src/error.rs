use thiserror::Error;

use crate::codec::DecodeError;
use crate::group::GroupError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Decode(#[from] DecodeError),

    #[error("{0} needs at least two children")]
    Arity(&'static str),
    #[error("OR node has {children} children but {flags} simulation flags")]
    FlagCount { children: usize, flags: usize },
    #[error("expression has no terms")]
    EmptyExpression,
    #[error("statement mixes groups of different order")]
    OrderMismatch,
    #[error("dangerous OR composition: secret appears outside OR clause (secret `{secret}`)")]
    DangerousOr { secret: String },

    #[error("secret `{0}` has no value")]
    MissingValue(String),
    #[error("secret `{0}` was given two different values")]
    ConflictingValues(String),
    #[error("every disjunct of an OR node is marked simulated")]
    AllSimulated,
    #[error("prover self-check failed: {0}")]
    SelfCheck(String),
    #[error("precommit failed: {0}")]
    Precommit(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("sub-challenges of an OR node do not sum to its challenge")]
    ChallengeSum,
    #[error("responses for a shared secret differ within one scope")]
    InconsistentResponses,
    #[error("extended statement must be expanded before running the sigma protocol")]
    Unexpanded,
    #[error("extended statements cannot appear inside a constructed extended statement")]
    NestedExtended,
    #[error("precommitment validation failed: {0}")]
    Validation(String),

    #[error("cannot extract: {0}")]
    Extraction(&'static str),
    #[error("invalid range: {0}")]
    InvalidRange(String),
}
