use thiserror::Error;

/// Errors raised by graph construction, solving and the verification tools.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsgError {
    #[error("capacity exceeded: {needed} vertices requested, at most {max} supported")]
    Capacity { needed: usize, max: usize },

    #[error("parse error in `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("anchor {anchor:?} is not a vertex of a {n}-vertex base graph")]
    InvalidAnchor { anchor: Option<usize>, n: usize },

    #[error("invalid subtraction set: {0}")]
    InvalidSubtractionSet(String),

    #[error("outside the domain of this evaluator: {0}")]
    Domain(String),

    #[error("unknown star family `{0}`")]
    UnknownFamily(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no period found: {0}")]
    NoPeriod(String),

    #[error("search bound {bound} exhausted before a repeated state was found")]
    SearchBound { bound: usize },
}

impl CsgError {
    pub(crate) fn parse(input: impl Into<String>, reason: impl Into<String>) -> Self {
        CsgError::Parse {
            input: input.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = CsgError> = std::result::Result<T, E>;
