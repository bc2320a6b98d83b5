use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} exceeded its cap of {limit}")]
    CapExceeded { what: &'static str, limit: usize },

    #[error("the given elements do not generate the group")]
    GeneratorsDoNotGenerate,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("group {name} declares order {declared} but closes to order {actual}")]
    OrderMismatch {
        name: String,
        declared: usize,
        actual: usize,
    },

    #[error("unsupported constructor parameters: {0}")]
    UnsupportedParams(String),

    #[error("catalog entries {0} and {1} both match the group")]
    AmbiguousMatch(String, String),

    #[error("(h0, s) = ({0}, {1}) is not one of the critical shapes")]
    ShapeNotCritical(u32, usize),

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
