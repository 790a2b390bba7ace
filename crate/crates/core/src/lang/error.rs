use thiserror::Error;

use super::value::StackState;

/// Evaluation failure. `position` is the index of the top-level token whose
/// instruction failed; failures inside a user word, `apply` or `map` report
/// the position of the outermost instruction.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LangError {
    #[error(
        "StackUnderflow at token {position}: `{word}` needs {needed} item(s), stack has {depth}"
    )]
    StackUnderflow {
        position: usize,
        word: String,
        needed: usize,
        depth: usize,
    },
    #[error("StackOverflow at token {position}: `{word}` would exceed stack depth {cap}")]
    StackOverflow {
        position: usize,
        word: String,
        cap: usize,
    },
    #[error("UnknownWord at token {position}: `{word}`")]
    UnknownWord { position: usize, word: String },
    #[error("UnbalancedBracket at token {position}")]
    UnbalancedBracket { position: usize },
    #[error("TypeMismatch at token {position}: `{word}` expects {expected}")]
    TypeMismatch {
        position: usize,
        word: String,
        expected: &'static str,
    },
    #[error("MalformedDefinition at token {position}: {reason}")]
    MalformedDefinition { position: usize, reason: String },
    #[error("DuplicateName at token {position}: `{name}` is already defined")]
    DuplicateName { position: usize, name: String },
}

impl LangError {
    /// Stable error name used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            LangError::StackUnderflow { .. } => "StackUnderflow",
            LangError::StackOverflow { .. } => "StackOverflow",
            LangError::UnknownWord { .. } => "UnknownWord",
            LangError::UnbalancedBracket { .. } => "UnbalancedBracket",
            LangError::TypeMismatch { .. } => "TypeMismatch",
            LangError::MalformedDefinition { .. } => "MalformedDefinition",
            LangError::DuplicateName { .. } => "DuplicateName",
        }
    }

    pub fn position(&self) -> usize {
        match self {
            LangError::StackUnderflow { position, .. }
            | LangError::StackOverflow { position, .. }
            | LangError::UnknownWord { position, .. }
            | LangError::UnbalancedBracket { position }
            | LangError::TypeMismatch { position, .. }
            | LangError::MalformedDefinition { position, .. }
            | LangError::DuplicateName { position, .. } => *position,
        }
    }
}

/// A failed trace: the stacks recorded before the failing instruction.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{error} (after {} step(s))", steps.len())]
pub struct TraceError {
    pub steps: Vec<StackState>,
    #[source]
    pub error: LangError,
}
