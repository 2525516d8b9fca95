use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("root datum is not of finite type: {0}")]
    NotFiniteType(String),

    #[error("Weyl group too large to enumerate ({0} elements exceed the limit)")]
    GroupTooLarge(usize),

    #[error("invalid diagram twist: {0}")]
    InvalidTwist(String),

    #[error("vector is not a root: {0:?}")]
    NotARoot(Vec<i64>),

    #[error("simple index {0} out of range (semisimple rank {1})")]
    UnknownIndex(usize, usize),

    #[error("invalid monodromy class: {0}")]
    InvalidClass(String),

    #[error("{0} is not a minimal coset representative")]
    NotMinimalRep(String),

    #[error("subset J is not stable under the diagram twist")]
    NotTwistStable,

    #[error("rotation split {0} out of range 1..={1}")]
    SplitOutOfRange(usize, usize),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    /// An identity that must hold by construction failed; this indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
