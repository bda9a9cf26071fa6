use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid braid word: {0}")]
    InvalidWord(String),
    #[error("invalid closure spec: {0}")]
    InvalidSpec(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("missing image for generator `{0}`")]
    MissingImage(String),
    #[error("crossing `{0}` is not certified contractible and proper")]
    NotProper(String),
    #[error("generator `{0}` does not have degree 0")]
    WrongDegree(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("inconsistent relations: {0}")]
    Inconsistent(String),
    #[error("relation system is not triangular: {0}")]
    NotTriangular(String),
    #[error("not an unlink: {0}")]
    NotUnlink(String),
    #[error("base point move not possible: {0}")]
    BadMove(String),
    #[error("no satellite box: {0}")]
    NoSatellite(String),
    #[error("generators do not form a linear-action group: {0}")]
    NotAGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
