use thiserror::Error;

use crate::syntax::{LabelId, Name};

/// Errors raised by the type checkers, evaluators and translations.
///
/// Terms are carried pre-rendered so errors stay cheap to clone and print.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("`{term}` is not a function; its type is `{ty}`")]
    NotAFunction { term: String, ty: String },
    #[error("type mismatch in `{term}`: expected `{expected}`, found `{actual}`")]
    TypeMismatch {
        term: String,
        expected: String,
        actual: String,
    },
    #[error("`{term}` is not a type; its type is `{ty}`")]
    NotAType { term: String, ty: String },
    #[error("unknown label `{0}`")]
    UnknownLabel(LabelId),
    #[error("label `{label}` expects {expected} closure values, got {actual}")]
    ClosureArity {
        label: LabelId,
        expected: usize,
        actual: usize,
    },
    #[error("closure value {index} of `{label}` has type `{actual}`, expected `{expected}`")]
    ClosureTypeMismatch {
        label: LabelId,
        index: usize,
        expected: String,
        actual: String,
    },
    #[error("reduction step budget of {0} exceeded")]
    StepBudgetExceeded(usize),
    #[error("ill-formed context entry `{name}`: {reason}")]
    IllFormedContext { name: Name, reason: String },
    #[error("ill-formed label `{label}`: {reason}")]
    IllFormedLabel { label: LabelId, reason: String },
    #[error("label `{0}` defined twice with different definitions")]
    LabelClash(LabelId),
    #[error("explicit substitution `{0}` outside the CC^σ checker")]
    UnexpectedSubstitution(String),
}

pub type Result<T, E = TypeError> = std::result::Result<T, E>;
