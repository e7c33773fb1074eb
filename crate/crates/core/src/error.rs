use thiserror::Error;

/// Library error. `is_parse` separates malformed input (exit code 2 in the
/// CLI) from domain failures (exit code 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("adjointness violated at {} pair(s), first at token {:?}, type {:?}", .0.len(), .0[0].0, .0[0].1)]
    Adjointness(Vec<(String, String)>),
    #[error("undefined conditional: {0}")]
    UndefinedConditional(String),
    #[error("division by zero: {0}")]
    Division(String),
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("preparation error: {0}")]
    Preparation(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("path error: {0}")]
    Path(String),
    #[error("typing error: {0}")]
    Typing(String),
    #[error("bound violated: {0}")]
    Bound(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Parse(_) => "parse",
            Error::Composition(_) => "composition",
            Error::Adjointness(_) => "adjointness",
            Error::UndefinedConditional(_) => "undefined_conditional",
            Error::Division(_) => "division",
            Error::Inconsistent(_) => "inconsistent",
            Error::Structure(_) => "structure",
            Error::Preparation(_) => "preparation",
            Error::Degenerate(_) => "degenerate",
            Error::Path(_) => "path",
            Error::Typing(_) => "typing",
            Error::Bound(_) => "bound",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
