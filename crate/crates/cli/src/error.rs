use std::fmt;

use plexus_core::array::ArrayError;
use plexus_core::diagram::DiagramError;
use plexus_core::evaluator::EvalError;
use plexus_core::rewrite::RewriteError;
use plexus_core::ternary::TernaryError;
use plexus_core::SemiringError;
use serde::Serialize;
use thiserror::Error;

/// Machine-readable error codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    ParseError,
    SizeMismatch,
    BadReference,
    UnknownIndexSet,
    Conformability,
    InvalidElement,
    InvalidArgument,
    Io,
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        f.write_str(&s)
    }
}

/// An input error: a code, where it happened, and a message.
#[derive(Debug, Clone, Error, Serialize)]
#[error("{code} at {location}: {message}")]
pub struct CliError {
    pub code: ErrorCode,
    pub location: String,
    pub message: String,
}

impl CliError {
    pub fn new(code: ErrorCode, location: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            code,
            location: location.into(),
            message: message.to_string(),
        }
    }

    pub fn argument(flag: &str, message: impl fmt::Display) -> Self {
        Self::new(ErrorCode::InvalidArgument, flag, message)
    }

    pub fn from_array(location: impl Into<String>, e: ArrayError) -> Self {
        let code = match &e {
            ArrayError::SizeMismatch { .. } | ArrayError::ConstellationMismatch { .. } => ErrorCode::SizeMismatch,
            ArrayError::UnknownIndexSet(_) => ErrorCode::UnknownIndexSet,
            ArrayError::Semiring(_) => ErrorCode::InvalidElement,
            ArrayError::IncompatibleSharedAxes(_) | ArrayError::SemiringMismatch(..) => ErrorCode::Conformability,
            ArrayError::Json(_) => ErrorCode::ParseError,
            _ => ErrorCode::InvalidArgument,
        };
        Self::new(code, location, e)
    }

    pub fn from_diagram(location: impl Into<String>, e: DiagramError) -> Self {
        let code = match &e {
            DiagramError::UnknownVertex { .. } => ErrorCode::BadReference,
            DiagramError::UnknownIndexSet { .. } => ErrorCode::UnknownIndexSet,
            DiagramError::Array(a) => return Self::from_array(location, a.clone()),
            _ => ErrorCode::InvalidArgument,
        };
        Self::new(code, location, e)
    }

    pub fn from_eval(location: impl Into<String>, e: EvalError) -> Self {
        let code = match &e {
            EvalError::Conformability { .. } | EvalError::NotALegPermutation { .. } | EvalError::SemiringMismatch(..) => ErrorCode::Conformability,
            EvalError::MissingBinding(_) | EvalError::UnknownEdge(_) | EvalError::UnknownVertex(_) | EvalError::BadOrder(_) => ErrorCode::BadReference,
            EvalError::Array(a) => return Self::from_array(location, a.clone()),
            EvalError::Semiring(_) => ErrorCode::InvalidElement,
            EvalError::NoSemiring => ErrorCode::InvalidArgument,
        };
        Self::new(code, location, e)
    }

    pub fn from_rewrite(location: impl Into<String>, e: RewriteError) -> Self {
        match e {
            RewriteError::Eval(e) => Self::from_eval(location, e),
            RewriteError::Diagram(e) | RewriteError::Rejected(e) => Self::from_diagram(location, e),
            other => Self::new(ErrorCode::InvalidArgument, location, other),
        }
    }

    pub fn from_ternary(location: impl Into<String>, e: TernaryError) -> Self {
        match e {
            TernaryError::Eval(e) => Self::from_eval(location, e),
            TernaryError::Array(e) => Self::from_array(location, e),
            TernaryError::Diagram(e) => Self::from_diagram(location, e),
            TernaryError::NotRegular | TernaryError::NotOrderThree(_) => Self::new(ErrorCode::Conformability, location, e),
            other => Self::new(ErrorCode::InvalidArgument, location, other),
        }
    }

    pub fn from_semiring(location: impl Into<String>, e: SemiringError) -> Self {
        let code = match &e {
            SemiringError::InvalidElement { .. } | SemiringError::Overflow(_) => ErrorCode::InvalidElement,
            _ => ErrorCode::InvalidArgument,
        };
        Self::new(code, location, e)
    }

    /// JSON syntax errors carry the line and column.
    pub fn parse(path: &str, e: &serde_json::Error) -> Self {
        Self::new(ErrorCode::ParseError, format!("{path}:{}:{}", e.line(), e.column()), e)
    }
}
