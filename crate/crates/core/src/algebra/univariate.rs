//! Dense univariate polynomials over the Gaussian rationals.
//!
//! These serve as the coefficient ring `Q(i)[zb]` of the recursive gcd.

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

/// Coefficients in ascending degree order with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    c: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(x: GaussianRational) -> Self {
        Self::from_coeffs(vec![x])
    }

    pub fn from_coeffs(c: Vec<GaussianRational>) -> Self {
        let mut p = Self { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> GaussianRational {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![GaussianRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += &(a * b);
                }
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, x: &GaussianRational) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        Self {
            c: self.c.iter().map(|a| a * x).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lc();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&l.inv().expect("nonzero"))
    }

    /// Euclidean division over the field `Q(i)`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().inv().expect("nonzero");
        let mut r = self.c.clone();
        let dn = d.c.len() - 1;
        let mut q = vec![GaussianRational::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let top = &r[k + dn];
            if top.is_zero() {
                continue;
            }
            let f = top * &inv;
            for (j, dc) in d.c.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] -= &(&f * dc);
                }
            }
            q[k] = f;
        }
        r.truncate(dn);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    #[test]
    fn division_with_remainder() {
        let (q, r) = p(&[1, 0, 1]).divrem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }
}
