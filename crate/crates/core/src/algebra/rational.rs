//! Reduced rational functions in `z` and `zb`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::gcd::poly_gcd;
use super::poly::BiPoly;
use crate::error::{Error, Result};

/// A quotient `num / den` in canonical form.
///
/// `gcd(num, den) = 1` and `den` has graded-lex leading coefficient 1, so
/// the derived equality decides equality of functions and `is_zero` is a
/// syntactic test.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self {
            num: BiPoly::constant(c),
            den: BiPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::constant(GaussianRational::from_real(r))
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Self {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn z() -> Self {
        Self::from_poly(BiPoly::z())
    }

    pub fn zb() -> Self {
        Self::from_poly(BiPoly::zb())
    }

    /// Builds `num / den` and reduces it to canonical form.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Makes an already coprime pair canonical by scaling the denominator monic.
    fn normalize(num: BiPoly, den: BiPoly) -> Self {
        let lc = den.leading_grlex().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            return Self { num, den };
        }
        let inv = lc.inv().expect("nonzero");
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the function is a constant, i.e. both formal derivatives vanish.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// The value as a rational number, if the function is a real constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.constant_value().filter(|c| c.is_real()).map(|c| c.re().clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        let combine = |a: &BiPoly, b: &BiPoly| if negate { a.sub(b) } else { a.add(b) };
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        if self.den == o.den {
            let n = combine(&self.num, &o.num);
            if self.den.is_one() {
                return Self::from_poly(n);
            }
            return Self::reduce(n, self.den.clone());
        }
        if self.den.is_one() {
            let n = combine(&self.num.mul(&o.den), &o.num);
            return Self::normalize(n, o.den.clone()).strip_zero();
        }
        if o.den.is_one() {
            let n = combine(&self.num, &o.num.mul(&self.den));
            return Self::normalize(n, self.den.clone()).strip_zero();
        }
        // Henrici: with g = gcd(b, d), only g can share factors with the new numerator.
        let g = poly_gcd(&self.den, &o.den);
        let bg = self.den.div_exact(&g).expect("gcd divides");
        let dg = o.den.div_exact(&g).expect("gcd divides");
        let n = combine(&self.num.mul(&dg), &o.num.mul(&bg));
        if n.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&dg);
        if g.is_one() {
            return Self::normalize(n, den);
        }
        let h = poly_gcd(&n, &g);
        if h.is_one() {
            Self::normalize(n, den)
        } else {
            Self::normalize(
                n.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }

    fn strip_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b) are the only possible common factors.
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let (a, d) = cancel(&self.num, &o.den, &g1);
        let (c, b) = cancel(&o.num, &self.den, &g2);
        Self::normalize(a.mul(&c), b.mul(&d))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&GaussianRational::from_real(r.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalize(self.num.pow(e), self.den.pow(e))
    }

    pub fn d_z(&self) -> Self {
        self.derive(BiPoly::d_z)
    }

    pub fn d_zb(&self) -> Self {
        self.derive(BiPoly::d_zb)
    }

    /// Quotient rule with the repeated-factor saving:
    /// `(n/d)' = (n' e - n (d'/g)) / (d e)` where `g = gcd(d, d')`, `e = d/g`.
    fn derive(&self, d: fn(&BiPoly) -> BiPoly) -> Self {
        let dn = d(&self.num);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = d(&self.den);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let g = poly_gcd(&self.den, &dd);
        let e = self.den.div_exact(&g).expect("gcd divides");
        let ddg = dd.div_exact(&g).expect("gcd divides");
        let n = dn.mul(&e).sub(&self.num.mul(&ddg));
        Self::reduce(n, self.den.mul(&e))
    }

    /// Complex conjugation of the function: swaps `z` and `zb`, conjugates coefficients.
    pub fn conj(&self) -> Self {
        Self::normalize(self.num.conj(), self.den.conj())
    }

    /// `d_z(d_zb(u) / u)`, which is `∂∂̄ log u` as a rational function.
    pub fn log_laplacian(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroLogArgument);
        }
        let q = self.d_zb().div(self)?;
        Ok(q.d_z())
    }

    /// Exact value at the chart point `z = z0`, `zb = conj(z0)`.
    pub fn evaluate_at(&self, z0: &GaussianRational) -> Result<GaussianRational> {
        let d = self.den.eval(z0);
        if d.is_zero() {
            return Err(Error::Pole(z0.to_string()));
        }
        self.num.eval(z0).checked_div(&d)
    }
}

fn cancel(n: &BiPoly, d: &BiPoly, g: &BiPoly) -> (BiPoly, BiPoly) {
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (
            n.div_exact(g).expect("gcd divides"),
            d.div_exact(g).expect("gcd divides"),
        )
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }

    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl std::ops::Add for RationalFunction {
    type Output = RationalFunction;

    fn add(self, o: RationalFunction) -> RationalFunction {
        RationalFunction::add(&self, &o)
    }
}

impl From<BiPoly> for RationalFunction {
    fn from(p: BiPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    /// `num` when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs() -> RationalFunction {
        RationalFunction::from_poly(BiPoly::one_plus_zzb())
    }

    fn zzb() -> RationalFunction {
        RationalFunction::z().mul(&RationalFunction::zb())
    }

    #[test]
    fn cancellation() {
        let r = fs().inv().unwrap();
        assert!(r.mul(&fs()).is_one());
    }

    #[test]
    fn common_denominator() {
        let inv = fs().inv().unwrap();
        assert!(zzb().mul(&inv).add(&inv).is_one());
    }

    #[test]
    fn exact_division() {
        let r = fs().pow(2).sub(&RationalFunction::one()).div(&zzb()).unwrap();
        assert_eq!(r, zzb().add(&RationalFunction::from_int(2)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(zzb().d_z(), RationalFunction::zb());
        let expected = RationalFunction::zb().neg().div(&fs().pow(2)).unwrap();
        assert_eq!(fs().inv().unwrap().d_z(), expected);
        let z2zb = RationalFunction::z().pow(2).mul(&RationalFunction::zb());
        assert_eq!(
            z2zb.d_z().d_zb(),
            RationalFunction::z().scale(&GaussianRational::from_int(2))
        );
    }

    #[test]
    fn conjugation_examples() {
        let iz = RationalFunction::z().scale(&GaussianRational::i());
        assert_eq!(iz.conj(), RationalFunction::zb().scale(&-GaussianRational::i()));
        assert_eq!(fs().conj(), fs());
        let r = RationalFunction::z().pow(2).div(&fs()).unwrap();
        assert_eq!(r.conj(), RationalFunction::zb().pow(2).div(&fs()).unwrap());
    }

    #[test]
    fn log_laplacian_of_powers() {
        for m in 1..4u32 {
            let expected = RationalFunction::from_int(m as i64).div(&fs().pow(2)).unwrap();
            assert_eq!(fs().pow(m).log_laplacian().unwrap(), expected);
        }
        assert!(RationalFunction::from_int(7).log_laplacian().unwrap().is_zero());
        let u = RationalFunction::from_int(2).div(&fs().pow(2)).unwrap();
        let expected = RationalFunction::from_int(-2).div(&fs().pow(2)).unwrap();
        assert_eq!(u.log_laplacian().unwrap(), expected);
        assert!(matches!(
            RationalFunction::zero().log_laplacian(),
            Err(Error::ZeroLogArgument)
        ));
    }

    #[test]
    fn evaluation() {
        let z0 = GaussianRational::from_ratios(1, 1, 1, 1);
        assert_eq!(fs().evaluate_at(&z0).unwrap(), GaussianRational::from_int(3));
        let r = RationalFunction::z().div(&fs()).unwrap();
        assert!(r.evaluate_at(&GaussianRational::zero()).unwrap().is_zero());
        let pole = fs().inv().unwrap();
        assert!(pole.evaluate_at(&GaussianRational::i()).is_ok());
        let bad = RationalFunction::one().div(&RationalFunction::z()).unwrap();
        assert!(matches!(
            bad.evaluate_at(&GaussianRational::zero()),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn printable_form() {
        let r = RationalFunction::z().div(&fs()).unwrap();
        assert_eq!(r.to_string(), "(1*z^1)/(1*z^1*zb^1 + 1)");
    }
}
