use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent caller input.
    #[error("input error: {0}")]
    Input(String),

    /// A presentation file could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The presentation parsed but violates a structural requirement.
    #[error("presentation error: {0}")]
    Presentation(String),

    /// The algebra is infinite dimensional where finiteness is required.
    #[error("algebra is not of finite type: {0}")]
    NotFiniteType(String),

    /// A degree-zero generator was declared in graded mode.
    #[error("degree-0 generator `{0}` is unsupported in graded mode")]
    DegreeZeroGenerator(String),

    /// An augmentation was requested on an algebra without one.
    #[error("algebra is not supplemented: {0}")]
    NotSupplemented(String),

    /// An internal invariant failed; indicates a bug or a broken complex.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
