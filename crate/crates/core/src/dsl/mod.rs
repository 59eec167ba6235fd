//! A small text language for weighted spaces, sections and span maps.
//!
//! ```text
//! # Veronese pair in G(2,3)
//! let a = veronese(2,0)
//! map phi = span(a, veronese(2,1))
//! ```
//!
//! Scripts are parsed into a [`SpecAst`] and elaborated into an
//! [`ImmersionSpec`] whose bundle feeds the invariant pipeline. Every error
//! carries a 1-based line and column inside the offending token.

mod ast;
mod elaborate;
mod lexer;
mod parser;

use std::fmt;

pub use ast::{Expr, ExprKind, PolyExpr, PolyKind, SpecAst, Stmt};
pub use elaborate::{elaborate, ElabOptions, ImmersionSpec};
pub use parser::parse;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

/// A half-open source range `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(start: Pos, end: Pos) -> Self {
        Self { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start, other.end)
    }

    /// True when `p` lies in the range; an empty range contains its start.
    pub fn contains(&self, p: Pos) -> bool {
        p == self.start || (self.start <= p && p < self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DslErrorKind {
    Lexical,
    Syntax,
    DuplicateBinding,
    UndefinedIdentifier,
    DimensionMismatch,
    WeightConflict,
    DependentSections,
    ZeroSection,
    VeroneseRange,
    InvalidValue,
}

impl DslErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DslErrorKind::Lexical => "lexical error",
            DslErrorKind::Syntax => "syntax error",
            DslErrorKind::DuplicateBinding => "duplicate binding",
            DslErrorKind::UndefinedIdentifier => "undefined identifier",
            DslErrorKind::DimensionMismatch => "dimension mismatch",
            DslErrorKind::WeightConflict => "weight conflict",
            DslErrorKind::DependentSections => "dependent sections",
            DslErrorKind::ZeroSection => "zero section",
            DslErrorKind::VeroneseRange => "veronese range",
            DslErrorKind::InvalidValue => "invalid value",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub span: Span,
    pub message: String,
}

impl DslError {
    pub(crate) fn new(kind: DslErrorKind, span: Span, message: impl Into<String>) -> Self {
        Self {
            kind,
            span,
            message: message.into(),
        }
    }

    pub fn line(&self) -> usize {
        self.span.start.line
    }

    pub fn col(&self) -> usize {
        self.span.start.col
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line(),
            self.col(),
            self.kind.as_str(),
            self.message
        )
    }
}

impl std::error::Error for DslError {}

/// Parses and elaborates in one step.
pub fn load(text: &str, opts: &ElabOptions) -> Result<ImmersionSpec, DslError> {
    elaborate(&parse(text)?, opts)
}
