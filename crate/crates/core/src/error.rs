use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("generator `{0}` does not belong to {1}")]
    UnknownGenerator(String, &'static str),
    #[error("elements from different presentations: {0} and {1}")]
    MixedPresentations(&'static str, &'static str),
    #[error("{0} is not in normal form")]
    NotNormalForm(String),
    #[error("the window at arity {arity} is infinite without a unit-count bound")]
    InfiniteWindow { arity: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("matrices are not composable: {0}")]
    Shape(String),
    #[error("boundary maps do not compose to zero")]
    NonzeroComposite,
    #[error("missing structure constant for `{0}`")]
    MissingConstant(String),
    #[error("instance error at {path}: {msg}")]
    Instance { path: String, msg: String },
    #[error("{0}")]
    Invalid(String),
}
