use thiserror::Error;

use crate::chain_maps::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("family {family} is not supported by {operation}{}", hint.map(|h| format!(" ({h})")).unwrap_or_default())]
    UnsupportedFamily {
        family: Family,
        operation: &'static str,
        hint: Option<&'static str>,
    },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("rewriting did not terminate within {cap} steps")]
    TerminationGuard { cap: usize },

    /// A normalizer tried to apply a relation that does not match the word.
    #[error("internal rewrite error: {0}")]
    Rewrite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
