use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} out of range (expected {1})")]
    DimensionOutOfRange(usize, &'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parity precondition violated: {0}")]
    Parity(String),

    #[error("ill-defined composite j-map: {0}")]
    IllDefined(String),

    #[error("value beyond completeness bound: {0}")]
    BeyondCutoff(String),

    #[error("insufficient completeness bound: {0}")]
    InsufficientCutoff(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("non-Hermitian block at mode {0}")]
    NonHermitian(String),

    #[error("eigenvalue snapping failed at mode {mode}: residual {residual:e}")]
    Snapping { mode: String, residual: f64 },

    #[error("unmatched modes: {0}")]
    UnmatchedModes(String),

    #[error("proposition part {part} undefined for (p, q) = ({p}, {q})")]
    PartUndefined { part: u8, p: usize, q: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
