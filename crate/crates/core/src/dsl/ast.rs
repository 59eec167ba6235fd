use num_bigint::BigInt;
use num_rational::BigRational;

use super::Span;
use crate::algebra::GaussianRational;

/// A polynomial expression in `z`, `zb` and the constant `theta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpr {
    pub kind: PolyKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyKind {
    Number(GaussianRational),
    Z,
    Zb,
    Theta,
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Veronese(BigInt, BigInt),
    PadEnd(Box<Expr>, usize),
    PadFront(Box<Expr>, usize),
    Concat(Box<Expr>, Box<Expr>),
    Const {
        weight: (BigRational, Span),
        value: PolyExpr,
    },
    Vector {
        entries: Vec<PolyExpr>,
        weights: Option<Vec<(BigRational, Span)>>,
    },
    Ident(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Stmt {
    Let {
        name: String,
        name_span: Span,
        expr: Expr,
    },
    /// Declares the ambient dimension and, optionally, its weights.
    Space {
        dim: usize,
        weights: Option<Vec<(BigRational, Span)>>,
        span: Span,
    },
    Map {
        name: String,
        name_span: Span,
        sections: Vec<Expr>,
        span: Span,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecAst {
    pub statements: Vec<Stmt>,
}

impl SpecAst {
    /// The map declaration, which the parser guarantees is the last statement.
    pub fn map(&self) -> (&str, &[Expr]) {
        match self.statements.last() {
            Some(Stmt::Map { name, sections, .. }) => (name, sections),
            _ => unreachable!("parser guarantees a trailing map declaration"),
        }
    }
}
