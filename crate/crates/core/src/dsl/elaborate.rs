//! Resolution of a parsed script into sections and a projection bundle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::ast::{Expr, ExprKind, PolyExpr, PolyKind, SpecAst, Stmt};
use super::{DslError, DslErrorKind, Span};
use crate::algebra::{rational_to_string, BiPoly, GaussianRational, RationalFunction};
use crate::ambient::{independent_subset, unify_spaces, VecRF, WeightedSpace};
use crate::error::Error;
use crate::sequences::{bundle_from_sections, concat, const_vector, pad_end, pad_front, veronese, BundleMap};

#[derive(Clone, Debug)]
pub struct ElabOptions {
    /// Value substituted for the identifier `theta`.
    pub theta: GaussianRational,
}

impl Default for ElabOptions {
    fn default() -> Self {
        Self {
            theta: GaussianRational::one(),
        }
    }
}

/// The elaborated map: unified sections, their source ranges, and the bundle.
#[derive(Clone, Debug)]
pub struct ImmersionSpec {
    pub name: String,
    pub space: WeightedSpace,
    pub sections: Vec<VecRF>,
    pub spans: Vec<Span>,
    pub bundle: BundleMap,
}

fn err(kind: DslErrorKind, span: Span, msg: impl Into<String>) -> DslError {
    DslError::new(kind, span, msg)
}

fn positive_weight(w: &(BigRational, Span)) -> Result<BigRational, DslError> {
    if w.0.is_positive() {
        Ok(w.0.clone())
    } else {
        Err(err(
            DslErrorKind::InvalidValue,
            w.1,
            format!("weight {} is not positive", rational_to_string(&w.0)),
        ))
    }
}

struct Elab<'a> {
    opts: &'a ElabOptions,
    env: HashMap<String, VecRF>,
}

impl Elab<'_> {
    fn poly(&self, p: &PolyExpr) -> BiPoly {
        match &p.kind {
            PolyKind::Number(c) => BiPoly::constant(c.clone()),
            PolyKind::Z => BiPoly::z(),
            PolyKind::Zb => BiPoly::zb(),
            PolyKind::Theta => BiPoly::constant(self.opts.theta.clone()),
            PolyKind::Neg(a) => self.poly(a).neg(),
            PolyKind::Add(a, b) => self.poly(a).add(&self.poly(b)),
            PolyKind::Sub(a, b) => self.poly(a).sub(&self.poly(b)),
            PolyKind::Mul(a, b) => self.poly(a).mul(&self.poly(b)),
            PolyKind::Pow(a, e) => self.poly(a).pow(*e),
        }
    }

    fn expr(&self, e: &Expr) -> Result<VecRF, DslError> {
        match &e.kind {
            ExprKind::Veronese(n, i) => {
                let small = |x: &BigInt| x.to_i64().filter(|v| v.abs() <= 64);
                let range = || {
                    err(
                        DslErrorKind::VeroneseRange,
                        e.span,
                        format!("veronese({n},{i}) needs 0 <= i <= n <= 64"),
                    )
                };
                let (Some(n), Some(i)) = (small(n), small(i)) else {
                    return Err(range());
                };
                if n > 64 {
                    return Err(range());
                }
                veronese(n, i).map_err(|_| range())
            }
            ExprKind::PadEnd(inner, k) => Ok(pad_end(&self.expr(inner)?, *k)),
            ExprKind::PadFront(inner, k) => Ok(pad_front(&self.expr(inner)?, *k)),
            ExprKind::Concat(a, b) => Ok(concat(&self.expr(a)?, &self.expr(b)?)),
            ExprKind::Const { weight, value } => {
                let w = positive_weight(weight)?;
                let v = self.poly(value);
                let Some(c) = v.constant_value() else {
                    return Err(err(
                        DslErrorKind::InvalidValue,
                        value.span,
                        "const value must not depend on z or zb",
                    ));
                };
                Ok(const_vector(w, c).expect("positive weight"))
            }
            ExprKind::Vector { entries, weights } => {
                let ws = match weights {
                    None => vec![BigRational::one(); entries.len()],
                    Some(ws) => {
                        if ws.len() != entries.len() {
                            let span = ws.first().unwrap().1.to(ws.last().unwrap().1);
                            return Err(err(
                                DslErrorKind::DimensionMismatch,
                                span,
                                format!("{} weights for a vector of length {}", ws.len(), entries.len()),
                            ));
                        }
                        ws.iter().map(positive_weight).collect::<Result<_, _>>()?
                    }
                };
                let comps = entries
                    .iter()
                    .map(|p| RationalFunction::from_poly(self.poly(p)))
                    .collect();
                Ok(VecRF::new(WeightedSpace::new(ws).expect("positive"), comps).expect("lengths agree"))
            }
            ExprKind::Ident(name) => self.env.get(name).cloned().ok_or_else(|| {
                err(
                    DslErrorKind::UndefinedIdentifier,
                    e.span,
                    format!("'{name}' is not defined"),
                )
            }),
        }
    }
}

/// Checks that all nonzero coordinates share one weight per index, naming the
/// first section that disagrees with an earlier one.
fn check_weights(vs: &[VecRF], exprs: &[Expr], declared: Option<&WeightedSpace>, map: &str) -> Result<(), DslError> {
    let n = vs[0].dim();
    for j in 0..n {
        let mut chosen: Option<(BigRational, Option<usize>)> = declared.map(|s| (s.weight(j).clone(), None));
        for (k, v) in vs.iter().enumerate() {
            if v.component(j).is_zero() {
                continue;
            }
            let w = v.space().weight(j);
            match &chosen {
                None => chosen = Some((w.clone(), Some(k))),
                Some((c, from)) if c != w => {
                    let origin = match from {
                        Some(f) => format!("section {}", f + 1),
                        None => "the declared space".to_string(),
                    };
                    return Err(err(
                        DslErrorKind::WeightConflict,
                        exprs[k].span,
                        format!(
                            "in map '{map}': section {} has weight {} at coordinate {}, but {origin} has {}",
                            k + 1,
                            rational_to_string(w),
                            j + 1,
                            rational_to_string(c)
                        ),
                    ));
                }
                _ => {}
            }
        }
    }
    Ok(())
}

pub fn elaborate(ast: &SpecAst, opts: &ElabOptions) -> Result<ImmersionSpec, DslError> {
    let mut el = Elab {
        opts,
        env: HashMap::new(),
    };
    let mut declared: Option<(usize, Option<WeightedSpace>, Span)> = None;
    for stmt in &ast.statements {
        match stmt {
            Stmt::Let { name, expr, .. } => {
                let v = el.expr(expr).map_err(|mut e| {
                    e.message = format!("in '{name}': {}", e.message);
                    e
                })?;
                el.env.insert(name.clone(), v);
            }
            Stmt::Space { dim, weights, span } => {
                if *dim == 0 {
                    return Err(err(
                        DslErrorKind::InvalidValue,
                        *span,
                        "the space must have positive dimension",
                    ));
                }
                let ws = match weights {
                    None => None,
                    Some(ws) => {
                        if ws.len() != *dim {
                            return Err(err(
                                DslErrorKind::DimensionMismatch,
                                *span,
                                format!("{} weights declared for a space of dimension {dim}", ws.len()),
                            ));
                        }
                        let ws = ws.iter().map(positive_weight).collect::<Result<_, _>>()?;
                        Some(WeightedSpace::new(ws).expect("positive"))
                    }
                };
                declared = Some((*dim, ws, *span));
            }
            Stmt::Map { .. } => {}
        }
    }

    let Some(Stmt::Map {
        name,
        sections: exprs,
        span: map_span,
        ..
    }) = ast.statements.last()
    else {
        unreachable!("parser guarantees a trailing map declaration");
    };
    let mut vs = Vec::with_capacity(exprs.len());
    for (k, e) in exprs.iter().enumerate() {
        let v = el.expr(e).map_err(|mut er| {
            er.message = format!("in map '{name}': {}", er.message);
            er
        })?;
        if v.is_zero() {
            return Err(err(
                DslErrorKind::ZeroSection,
                e.span,
                format!("in map '{name}': section {} is identically zero", k + 1),
            ));
        }
        let expected = declared
            .as_ref()
            .map_or(vs.first().map_or(v.dim(), VecRF::dim), |d| d.0);
        if v.dim() != expected {
            let against = if declared.is_some() {
                "the declared space".to_string()
            } else {
                "section 1".to_string()
            };
            return Err(err(
                DslErrorKind::DimensionMismatch,
                e.span,
                format!(
                    "in map '{name}': section {} has dimension {}, but {against} has dimension {expected}",
                    k + 1,
                    v.dim()
                ),
            ));
        }
        vs.push(v);
    }

    let declared_space = declared.as_ref().and_then(|d| d.1.as_ref());
    check_weights(&vs, exprs, declared_space, name)?;
    let mut unified = unify_spaces(&vs).map_err(|e| err(DslErrorKind::WeightConflict, *map_span, e.to_string()))?;
    if let Some(space) = declared_space {
        unified = unified
            .iter()
            .map(|v| v.reweighted(space))
            .collect::<Result<_, Error>>()
            .map_err(|e| err(DslErrorKind::WeightConflict, *map_span, e.to_string()))?;
    }

    let independent = independent_subset(&unified);
    if independent.len() < unified.len() {
        let k = (0..unified.len())
            .find(|k| !independent.contains(k))
            .expect("a dependent index exists");
        return Err(err(
            DslErrorKind::DependentSections,
            exprs[k].span,
            format!("in map '{name}': section {} depends on the sections before it", k + 1),
        ));
    }

    let bundle = bundle_from_sections(&unified).map_err(|e| {
        let kind = match e {
            Error::DependentSections => DslErrorKind::DependentSections,
            Error::ZeroSection => DslErrorKind::ZeroSection,
            _ => DslErrorKind::InvalidValue,
        };
        err(kind, *map_span, format!("in map '{name}': {e}"))
    })?;
    Ok(ImmersionSpec {
        name: name.clone(),
        space: bundle.space().clone(),
        sections: unified,
        spans: exprs.iter().map(|e| e.span).collect(),
        bundle,
    })
}
