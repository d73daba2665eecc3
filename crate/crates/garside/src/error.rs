use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("paths are not composable: target `{left}` does not match source `{right}`")]
    EndpointMismatch { left: String, right: String },
    #[error("relation sides must be non-empty and share source and target: {0}")]
    BadRelation(String),
    #[error("presentation is not right-complemented: two relations start with `{0}` and `{1}`")]
    NotComplemented(String, String),
    #[error("no common multiple: complement undefined on ({0}, {1})")]
    NoCommonMultiple(String, String),
    #[error("reversing ran out of fuel after {0} steps")]
    OutOfFuel(u64),
    #[error("closure diverged: {0}")]
    Diverged(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid germ: {0}")]
    InvalidGerm(String),
    #[error("element has no expression as a right fraction")]
    NoRightFraction,
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
