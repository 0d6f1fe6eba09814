use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A vector did not have the length an operation requires.
    #[error("dimension mismatch for {what}: expected {expected}, got {actual}")]
    Dimension {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    /// A requested object would be too large (or degenerate) to build.
    #[error("size error: {0}")]
    Size(String),

    /// A numeric argument is outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input (bit strings, LLR files, spec files).
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally valid parts that do not fit together.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dimension(what: &'static str, expected: usize, actual: usize) -> Self {
        Error::Dimension {
            what,
            expected,
            actual,
        }
    }
}
