//! Sparse bivariate polynomials in the formal variables `z` and `zb`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

/// An exponent pair `(deg_z, deg_zb)`.
pub type Exp = (u32, u32);

/// Graded-lexicographic comparison: total degree first, then the `z` degree.
pub fn grlex_cmp(a: Exp, b: Exp) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

/// A polynomial in `z` and `zb` with Gaussian-rational coefficients.
///
/// Terms are kept sorted by exponent pair (lexicographically, `z` first)
/// without zero coefficients, so the derived equality is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    terms: Vec<(Exp, GaussianRational)>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: GaussianRational, a: u32, b: u32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![((a, b), c)],
            }
        }
    }

    pub fn z() -> Self {
        Self::monomial(GaussianRational::one(), 1, 0)
    }

    pub fn zb() -> Self {
        Self::monomial(GaussianRational::one(), 0, 1)
    }

    /// `1 + z*zb`, the ubiquitous Fubini-Study factor.
    pub fn one_plus_zzb() -> Self {
        Self {
            terms: vec![((0, 0), GaussianRational::one()), ((1, 1), GaussianRational::one())],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exp, GaussianRational)>>(it: I) -> Self {
        let mut v: Vec<(Exp, GaussianRational)> = it.into_iter().collect();
        v.sort_by_key(|x| x.0);
        let mut out: Vec<(Exp, GaussianRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(Exp, GaussianRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == (0, 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == (0, 0) && self.terms[0].1.is_one()
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::zero()),
            [((0, 0), c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coeff(&self, e: Exp) -> GaussianRational {
        match self.terms.binary_search_by(|t| t.0.cmp(&e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => GaussianRational::zero(),
        }
    }

    pub fn deg_z(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.0 .0)
    }

    pub fn deg_zb(&self) -> u32 {
        self.terms.iter().map(|t| t.0 .1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0 .0 + t.0 .1).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_exponents(&self) -> Exp {
        let a = self.terms.first().map_or(0, |t| t.0 .0);
        let b = self.terms.iter().map(|t| t.0 .1).min().unwrap_or(0);
        (a, b)
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading_grlex(&self) -> Option<&(Exp, GaussianRational)> {
        self.terms.iter().max_by(|x, y| grlex_cmp(x.0, y.0))
    }

    /// Leading term under lexicographic order with `z` dominant.
    pub fn leading_lex(&self) -> Option<&(Exp, GaussianRational)> {
        self.terms.last()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&GaussianRational::from_real(r.clone()))
    }

    /// Multiplies by the monomial `z^a zb^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    /// Divides by `z^a zb^b`; every term must be divisible.
    pub(crate) fn unshift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((x, y), c)| ((x - a, y - b), c.clone()))
                .collect(),
        }
    }

    /// Divides by the graded-lex leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_grlex() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.merge(rhs, true)
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { rhs.neg() } else { rhs.clone() };
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (l, r) = (&self.terms, &rhs.terms);
        while i < l.len() && j < r.len() {
            match l[i].0.cmp(&r[j].0) {
                Ordering::Less => {
                    out.push(l[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&r[j].1 } else { r[j].1.clone() };
                    out.push((r[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &l[i].1 - &r[j].1 } else { &l[i].1 + &r[j].1 };
                    if !c.is_zero() {
                        out.push((l[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&l[i..]);
        for t in &r[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Self { terms: out }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        // Dense accumulation indexed lexicographically; degrees here are small.
        let da = (self.deg_z() + rhs.deg_z()) as usize;
        let db = (self.deg_zb() + rhs.deg_zb()) as usize;
        let w = db + 1;
        let mut acc: Vec<GaussianRational> = vec![GaussianRational::zero(); (da + 1) * w];
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                let idx = (a1 + a2) as usize * w + (b1 + b2) as usize;
                acc[idx] += &(c1 * c2);
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (((k / w) as u32, (k % w) as u32), c))
            .collect();
        Self { terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn d_z(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, *b), c.scale(&BigRational::from_integer((*a).into()))))
                .collect(),
        }
    }

    pub fn d_zb(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|((a, b), c)| ((*a, b - 1), c.scale(&BigRational::from_integer((*b).into())))),
        )
    }

    /// Formal conjugation: swap the roles of `z` and `zb`, conjugate coefficients.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((a, b), c)| ((*b, *a), c.conj())))
    }

    /// Substitutes `z = z0`, `zb = zb0` (independent values).
    pub fn eval2(&self, z0: &GaussianRational, zb0: &GaussianRational) -> GaussianRational {
        let dz = self.deg_z();
        let dzb = self.deg_zb();
        let zp = powers(z0, dz);
        let zbp = powers(zb0, dzb);
        let mut acc = GaussianRational::zero();
        for ((a, b), c) in &self.terms {
            acc += &(&(c * &zp[*a as usize]) * &zbp[*b as usize]);
        }
        acc
    }

    /// Substitutes the chart point: `z = z0`, `zb = conj(z0)`.
    pub fn eval(&self, z0: &GaussianRational) -> GaussianRational {
        self.eval2(z0, &z0.conj())
    }

    /// Exact quotient `self / q`, or `None` when `q` does not divide `self`.
    pub fn div_exact(&self, q: &Self) -> Option<Self> {
        assert!(!q.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = q.constant_value() {
            return Some(self.scale(&c.inv().ok()?));
        }
        if q.terms.len() == 1 {
            let ((qa, qb), qc) = &q.terms[0];
            let (ma, mb) = self.min_exponents();
            if ma < *qa || mb < *qb {
                return None;
            }
            return Some(self.unshift(*qa, *qb).scale(&qc.inv().ok()?));
        }
        if self.deg_z() < q.deg_z() || self.deg_zb() < q.deg_zb() {
            return None;
        }
        let ((la, lb), lc) = q.leading_lex().expect("nonzero").clone();
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Exp, GaussianRational)> = Vec::new();
        while let Some(((ra, rb), rc)) = rem.leading_lex().cloned() {
            if ra < la || rb < lb {
                return None;
            }
            let c = &rc * &lc_inv;
            let (ea, eb) = (ra - la, rb - lb);
            rem = rem.sub(&q.shift(ea, eb).scale(&c));
            quot.push(((ea, eb), c));
        }
        Some(Self::from_terms(quot))
    }
}

fn powers(x: &GaussianRational, n: u32) -> Vec<GaussianRational> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(GaussianRational::one());
    for k in 0..n as usize {
        v.push(&v[k] * x);
    }
    v
}

impl fmt::Display for BiPoly {
    /// Terms in descending graded-lex order as `coef*z^a*zb^b`, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ts: Vec<&(Exp, GaussianRational)> = self.terms.iter().collect();
        ts.sort_by(|x, y| grlex_cmp(y.0, x.0));
        for (k, ((a, b), c)) in ts.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_real() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})")?;
            }
            if *a > 0 {
                write!(f, "*z^{a}")?;
            }
            if *b > 0 {
                write!(f, "*zb^{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn from_terms_merges_and_drops_zeros() {
        let p = BiPoly::from_terms(vec![((1, 0), c(2)), ((0, 0), c(1)), ((1, 0), c(-2))]);
        assert_eq!(p, BiPoly::one());
    }

    #[test]
    fn square_of_fubini_study_factor() {
        let p = BiPoly::one_plus_zzb().pow(2);
        let expected = BiPoly::from_terms(vec![((0, 0), c(1)), ((1, 1), c(2)), ((2, 2), c(1))]);
        assert_eq!(p, expected);
    }

    #[test]
    fn exact_division_and_failure() {
        let g = BiPoly::one_plus_zzb();
        let p = g.mul(&BiPoly::z().add(&BiPoly::zb()));
        assert_eq!(p.div_exact(&g), Some(BiPoly::z().add(&BiPoly::zb())));
        assert_eq!(BiPoly::z().div_exact(&g), None);
        assert_eq!(
            BiPoly::z().shift(2, 1).div_exact(&BiPoly::z()),
            Some(BiPoly::z().shift(1, 1))
        );
    }

    #[test]
    fn derivatives() {
        let p = BiPoly::monomial(c(1), 2, 1);
        assert_eq!(p.d_z(), BiPoly::monomial(c(2), 1, 1));
        assert_eq!(p.d_zb(), BiPoly::monomial(c(1), 2, 0));
    }

    #[test]
    fn conjugation_swaps_variables() {
        let p = BiPoly::monomial(GaussianRational::i(), 1, 0);
        assert_eq!(p.conj(), BiPoly::monomial(-GaussianRational::i(), 0, 1));
    }

    #[test]
    fn grlex_leading_term() {
        let p = BiPoly::from_terms(vec![((3, 0), c(1)), ((2, 2), c(5)), ((0, 4), c(7))]);
        assert_eq!(p.leading_grlex().unwrap().0, (2, 2));
    }

    #[test]
    fn display() {
        let p = BiPoly::from_terms(vec![
            ((0, 0), c(1)),
            ((1, 1), c(-2)),
            ((1, 0), GaussianRational::from_ratios(0, 1, 1, 2)),
        ]);
        assert_eq!(p.to_string(), "-2*z^1*zb^1 + (1/2i)*z^1 + 1");
    }
}
