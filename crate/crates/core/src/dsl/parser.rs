//! Recursive-descent parser.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ast::{Expr, ExprKind, PolyExpr, PolyKind, SpecAst, Stmt};
use super::lexer::{tokenize, Tok, Token};
use super::{DslError, DslErrorKind, Span};
use crate::algebra::GaussianRational;

const RESERVED: &[&str] = &[
    "let",
    "map",
    "space",
    "span",
    "veronese",
    "pad_end",
    "pad_front",
    "concat",
    "const",
    "z",
    "zb",
    "i",
    "theta",
];

pub fn parse(text: &str) -> Result<SpecAst, DslError> {
    let tokens = tokenize(text)?;
    Parser { tokens, at: 0 }.file()
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

type PResult<T> = Result<T, DslError>;

fn syntax(span: Span, msg: impl Into<String>) -> DslError {
    DslError::new(DslErrorKind::Syntax, span, msg)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.at.saturating_sub(1)].span
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn unexpected(&self, wanted: &str) -> DslError {
        let t = self.peek();
        syntax(t.span, format!("expected {wanted}, found {}", t.tok.describe()))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if self.peek().tok == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<Span> {
        if self.is_word(w) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("'{w}'")))
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn binding_name(&mut self, seen: &mut HashSet<String>) -> PResult<(String, Span)> {
        let (name, span) = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(syntax(span, format!("'{name}' is a reserved word")));
        }
        if !seen.insert(name.clone()) {
            return Err(DslError::new(
                DslErrorKind::DuplicateBinding,
                span,
                format!("'{name}' is already bound"),
            ));
        }
        Ok((name, span))
    }

    fn file(mut self) -> PResult<SpecAst> {
        let mut statements = Vec::new();
        let mut seen = HashSet::new();
        let mut space_seen = false;
        loop {
            if self.is_word("let") {
                self.bump();
                let (name, name_span) = self.binding_name(&mut seen)?;
                self.expect(Tok::Eq)?;
                let expr = self.expr()?;
                statements.push(Stmt::Let { name, name_span, expr });
            } else if self.is_word("space") {
                let start = self.bump().span;
                if space_seen {
                    return Err(DslError::new(
                        DslErrorKind::DuplicateBinding,
                        start,
                        "the space is already declared",
                    ));
                }
                space_seen = true;
                let (dim, _) = self.usize_lit()?;
                let weights = if self.peek().tok == Tok::AtWeights {
                    self.bump();
                    Some(self.weight_list()?)
                } else {
                    None
                };
                statements.push(Stmt::Space {
                    dim,
                    weights,
                    span: start.to(self.prev_span()),
                });
            } else if self.is_word("map") {
                let start = self.bump().span;
                let (name, name_span) = self.binding_name(&mut seen)?;
                self.expect(Tok::Eq)?;
                self.expect_word("span")?;
                self.expect(Tok::LParen)?;
                let mut sections = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    sections.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                statements.push(Stmt::Map {
                    name,
                    name_span,
                    sections,
                    span: start.to(self.prev_span()),
                });
                if self.peek().tok != Tok::Eof {
                    let t = self.peek();
                    return Err(syntax(
                        t.span,
                        format!("unexpected {} after the map declaration", t.tok.describe()),
                    ));
                }
                return Ok(SpecAst { statements });
            } else if self.peek().tok == Tok::Eof {
                return Err(syntax(
                    self.peek().span,
                    "expected a map declaration before end of input",
                ));
            } else {
                return Err(self.unexpected("'let', 'space' or 'map'"));
            }
        }
    }

    fn signed_int(&mut self) -> PResult<(BigInt, Span)> {
        let neg = if self.peek().tok == Tok::Minus {
            Some(self.bump().span)
        } else {
            None
        };
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                let span = self.bump().span;
                let span = neg.map_or(span, |s| s.to(span));
                Ok((if neg.is_some() { -n } else { n }, span))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn usize_lit(&mut self) -> PResult<(usize, Span)> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                let span = self.bump().span;
                let v = n
                    .to_usize()
                    .ok_or_else(|| DslError::new(DslErrorKind::InvalidValue, span, "integer is too large"))?;
                Ok((v, span))
            }
            _ => Err(self.unexpected("a non-negative integer")),
        }
    }

    fn rational_lit(&mut self) -> PResult<(BigRational, Span)> {
        let (p, span) = self.signed_int()?;
        if self.peek().tok != Tok::Slash {
            return Ok((BigRational::from_integer(p), span));
        }
        self.bump();
        let (q, qspan) = self.signed_int()?;
        if q.is_zero() {
            return Err(DslError::new(DslErrorKind::InvalidValue, qspan, "zero denominator"));
        }
        Ok((BigRational::new(p, q), span.to(qspan)))
    }

    fn weight_list(&mut self) -> PResult<Vec<(BigRational, Span)>> {
        self.expect(Tok::LBracket)?;
        let mut out = vec![self.rational_lit()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            out.push(self.rational_lit()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn call_args<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.expect(Tok::LParen)?;
        let v = f(self)?;
        self.expect(Tok::RParen)?;
        Ok(v)
    }

    fn expr(&mut self) -> PResult<Expr> {
        let start = self.peek().span;
        let kind = match self.peek().tok.clone() {
            Tok::LBracket => {
                self.bump();
                let mut entries = vec![self.poly()?];
                while self.peek().tok == Tok::Comma {
                    self.bump();
                    entries.push(self.poly()?);
                }
                self.expect(Tok::RBracket)?;
                let weights = if self.peek().tok == Tok::AtWeights {
                    self.bump();
                    Some(self.weight_list()?)
                } else {
                    None
                };
                ExprKind::Vector { entries, weights }
            }
            Tok::Ident(w) => {
                self.bump();
                match w.as_str() {
                    "veronese" => self.call_args(|p| {
                        let (n, _) = p.signed_int()?;
                        p.expect(Tok::Comma)?;
                        let (i, _) = p.signed_int()?;
                        Ok(ExprKind::Veronese(n, i))
                    })?,
                    "pad_end" | "pad_front" => {
                        let front = w == "pad_front";
                        self.call_args(|p| {
                            let e = Box::new(p.expr()?);
                            p.expect(Tok::Comma)?;
                            let (k, _) = p.usize_lit()?;
                            Ok(if front {
                                ExprKind::PadFront(e, k)
                            } else {
                                ExprKind::PadEnd(e, k)
                            })
                        })?
                    }
                    "concat" => self.call_args(|p| {
                        let a = Box::new(p.expr()?);
                        p.expect(Tok::Comma)?;
                        let b = Box::new(p.expr()?);
                        Ok(ExprKind::Concat(a, b))
                    })?,
                    "const" => self.call_args(|p| {
                        p.expect_word("w")?;
                        p.expect(Tok::Eq)?;
                        let weight = p.rational_lit()?;
                        p.expect(Tok::Comma)?;
                        p.expect_word("value")?;
                        p.expect(Tok::Eq)?;
                        let value = p.poly()?;
                        Ok(ExprKind::Const { weight, value })
                    })?,
                    _ => ExprKind::Ident(w),
                }
            }
            _ => return Err(self.unexpected("a section expression")),
        };
        Ok(Expr {
            kind,
            span: start.to(self.prev_span()),
        })
    }

    fn poly(&mut self) -> PResult<PolyExpr> {
        let mut lhs = self.term()?;
        loop {
            let op = self.peek().tok.clone();
            if op != Tok::Plus && op != Tok::Minus {
                return Ok(lhs);
            }
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            let kind = if op == Tok::Plus {
                PolyKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                PolyKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = PolyExpr { kind, span };
        }
    }

    fn term(&mut self) -> PResult<PolyExpr> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span.to(rhs.span);
            lhs = PolyExpr {
                kind: PolyKind::Mul(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<PolyExpr> {
        match self.peek().tok {
            Tok::Minus => {
                let start = self.bump().span;
                let inner = self.unary()?;
                let span = start.to(inner.span);
                Ok(PolyExpr {
                    kind: PolyKind::Neg(Box::new(inner)),
                    span,
                })
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<PolyExpr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (e, espan) = self.usize_lit()?;
        let e =
            u32::try_from(e).map_err(|_| DslError::new(DslErrorKind::InvalidValue, espan, "exponent is too large"))?;
        let span = base.span.to(espan);
        Ok(PolyExpr {
            kind: PolyKind::Pow(Box::new(base), e),
            span,
        })
    }

    /// An integer literal, flagged when it carries the `i` suffix.
    fn number_part(&mut self) -> Option<(BigInt, bool, Span)> {
        let (n, imag) = match &self.peek().tok {
            Tok::Int(n) => (n.clone(), false),
            Tok::Imag(n) => (n.clone(), true),
            _ => return None,
        };
        Some((n, imag, self.bump().span))
    }

    /// `p`, `p/q`, with the `i` suffix on either part scaling the whole literal,
    /// so `3/4i` and `3i/4` both denote `(3/4) i`.
    fn atom(&mut self) -> PResult<PolyExpr> {
        if let Some((p, p_imag, span)) = self.number_part() {
            let (q, imag, span) = if self.peek().tok == Tok::Slash {
                self.bump();
                let Some((q, q_imag, qspan)) = self.number_part() else {
                    return Err(self.unexpected("a number after '/'"));
                };
                if q.is_zero() {
                    return Err(DslError::new(DslErrorKind::InvalidValue, qspan, "zero denominator"));
                }
                if p_imag && q_imag {
                    return Err(DslError::new(
                        DslErrorKind::InvalidValue,
                        qspan,
                        "a literal takes at most one 'i' suffix",
                    ));
                }
                (q, p_imag || q_imag, span.to(qspan))
            } else {
                (BigInt::from(1), p_imag, span)
            };
            let r = BigRational::new(p, q);
            let value = if imag {
                GaussianRational::new(BigRational::zero(), r)
            } else {
                GaussianRational::from_real(r)
            };
            return Ok(PolyExpr {
                kind: PolyKind::Number(value),
                span,
            });
        }
        let t = self.peek().clone();
        let kind = match &t.tok {
            Tok::LParen => {
                self.bump();
                let inner = self.poly()?;
                self.expect(Tok::RParen)?;
                return Ok(PolyExpr {
                    kind: inner.kind,
                    span: t.span.to(self.prev_span()),
                });
            }
            Tok::Ident(w) if w == "z" => PolyKind::Z,
            Tok::Ident(w) if w == "zb" => PolyKind::Zb,
            Tok::Ident(w) if w == "theta" => PolyKind::Theta,
            Tok::Ident(w) if w == "i" => PolyKind::Number(GaussianRational::i()),
            _ => return Err(self.unexpected("a polynomial term")),
        };
        self.bump();
        Ok(PolyExpr { kind, span: t.span })
    }
}
