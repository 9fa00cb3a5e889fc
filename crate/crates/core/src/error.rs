use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A numeric parameter is outside the operation's domain.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// The input is valid but exceeds a documented desk-scale bound.
    #[error("capability error: {0}")]
    Capability(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unbound variable `{name}` at line {line}, column {col}")]
    Unbound {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("type error: {0}")]
    Type(String),
    /// The input lies outside the hypothesis an operation relies on.
    #[error("hypothesis violation at vertex {vertex}: {msg}")]
    Hypothesis { vertex: usize, msg: String },
    #[error("overflow at {path}: {msg}")]
    Overflow { path: String, msg: String },
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("construction error: {0}")]
    Construction(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that signal a desk-scale limit rather than bad input.
    pub fn is_capability(&self) -> bool {
        matches!(self, Error::Capability(_) | Error::Overflow { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
