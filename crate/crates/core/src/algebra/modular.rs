//! Prime-field images of bivariate polynomials: a cheap coprimality
//! certificate and a modular gcd.
//!
//! For a prime `p ≡ 1 (mod 4)` both square roots `±ι` of `-1` give ring
//! homomorphisms `Z[i] -> F_p`, and they extend to every Gaussian rational
//! whose denominators are units mod `p`. Reading a coefficient `a + b i`
//! through both roots recovers `a` and `b` mod `p`, so images over `F_p`
//! carry all the information needed for Chinese remaindering.
//!
//! Neither routine can return a wrong answer. The certificate is one-sided,
//! and the modular gcd only returns a candidate after exact division over
//! `Q(i)` and a coprimality certificate for the cofactors. Any doubt is
//! reported as `None` and the caller falls back to exact elimination.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;
use super::poly::{grlex_cmp, BiPoly};

type Exp = (u32, u32);

#[derive(Clone, Copy, Debug)]
struct Field {
    p: u64,
    iota: u64,
}

impl Field {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b)
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn conjugate(self) -> Self {
        Self {
            p: self.p,
            iota: self.p - self.iota,
        }
    }

    fn int(self, n: &BigInt) -> u64 {
        let (sign, digits) = n.to_u64_digits();
        let m = self.p as u128;
        let r = digits.iter().rev().fold(0u128, |acc, d| ((acc << 64) | *d as u128) % m) as u64;
        if sign == Sign::Minus && r != 0 {
            self.p - r
        } else {
            r
        }
    }

    fn rational(self, r: &BigRational) -> Option<u64> {
        let n = self.int(r.numer());
        if r.denom().is_one() {
            return Some(n);
        }
        let d = self.int(r.denom());
        (d != 0).then(|| self.mul(n, self.inv(d)))
    }

    fn gaussian(self, c: &GaussianRational) -> Option<u64> {
        let re = self.rational(c.re())?;
        if c.im().is_zero() {
            return Some(re);
        }
        let im = self.rational(c.im())?;
        Some(self.add(re, self.mul(im, self.iota)))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let f = Field { p: n, iota: 0 };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for b in BASES {
        let mut x = f.pow(b, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes `p ≡ 1 (mod 4)` below `2^62`, in decreasing order, each with a root of `-1`.
fn fields() -> impl Iterator<Item = Field> {
    static TABLE: OnceLock<Vec<Field>> = OnceLock::new();
    TABLE
        .get_or_init(|| {
            let start = (1u64 << 62) - 3;
            (0..)
                .map(move |k| start - 4 * k)
                .filter(|&p| is_prime(p))
                .map(|p| {
                    let f = Field { p, iota: 0 };
                    let nonresidue = (2..)
                        .find(|&a| f.pow(a, (p - 1) / 2) == p - 1)
                        .expect("a nonresidue exists");
                    Field {
                        p,
                        iota: f.pow(nonresidue, (p - 1) / 4),
                    }
                })
                .take(MAX_PRIMES)
                .collect()
        })
        .iter()
        .copied()
}

// Dense univariate polynomials over F_p, ascending, without trailing zeros.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn eval(f: Field, v: &[u64], x: u64) -> u64 {
    v.iter().rev().fold(0, |acc, c| f.add(f.mul(acc, x), *c))
}

fn scale(f: Field, v: &[u64], c: u64) -> Vec<u64> {
    let mut out: Vec<u64> = v.iter().map(|x| f.mul(*x, c)).collect();
    trim(&mut out);
    out
}

fn mul(f: Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(*x, *y));
        }
    }
    trim(&mut out);
    out
}

fn divrem(f: Field, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lb = f.inv(*b.last().expect("nonzero divisor"));
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = f.mul(*r.last().unwrap(), lb);
        let shift = r.len() - b.len();
        q[shift] = c;
        for (k, bc) in b.iter().enumerate() {
            r[k + shift] = f.sub(r[k + shift], f.mul(c, *bc));
        }
        trim(&mut r);
    }
    (q, r)
}

fn monic(f: Field, v: &[u64]) -> Vec<u64> {
    match v.last() {
        None => Vec::new(),
        Some(lc) => scale(f, v, f.inv(*lc)),
    }
}

fn gcd(f: Field, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = divrem(f, &a, &b).1;
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Newton interpolation of several value rows through the same nodes `xs`.
fn interpolate_rows(f: Field, xs: &[u64], rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = xs.len();
    // inv[j][k] = 1 / (x_k - x_{k-j})
    let inv: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    if k >= j && j > 0 {
                        f.inv(f.sub(xs[k], xs[k - j]))
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    rows.iter()
        .map(|ys| {
            let mut dd = ys.clone();
            for j in 1..n {
                for k in (j..n).rev() {
                    dd[k] = f.mul(f.sub(dd[k], dd[k - 1]), inv[j][k]);
                }
            }
            let mut out = vec![dd[n - 1]];
            for k in (0..n - 1).rev() {
                // out = out * (x - x_k) + dd[k]
                let mut next = vec![0u64; out.len() + 1];
                for (i, c) in out.iter().enumerate() {
                    next[i + 1] = f.add(next[i + 1], *c);
                    next[i] = f.sub(next[i], f.mul(*c, xs[k]));
                }
                next[0] = f.add(next[0], dd[k]);
                out = next;
            }
            trim(&mut out);
            out
        })
        .collect()
}

// Bivariate images: coefficients in F_p[zb], indexed by the degree in z.

type ZMajor = Vec<Vec<u64>>;

fn zmajor_trim(v: &mut ZMajor) {
    while v.last().is_some_and(|c| c.is_empty()) {
        v.pop();
    }
}

fn content(f: Field, v: &ZMajor) -> Vec<u64> {
    let mut g: Vec<u64> = Vec::new();
    for c in v {
        if c.is_empty() {
            continue;
        }
        g = gcd(f, &g, c);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn div_content(f: Field, v: &ZMajor, c: &[u64]) -> ZMajor {
    v.iter().map(|x| divrem(f, x, c).0).collect()
}

/// The image of `p`, provided its degrees in both variables survive reduction.
fn image(f: Field, p: &BiPoly) -> Option<ZMajor> {
    let mut out: ZMajor = vec![Vec::new(); p.deg_z() as usize + 1];
    for ((a, b), c) in p.terms() {
        let row = &mut out[*a as usize];
        if row.len() <= *b as usize {
            row.resize(*b as usize + 1, 0);
        }
        row[*b as usize] = f.gaussian(c)?;
    }
    for row in out.iter_mut() {
        trim(row);
    }
    let zb_deg = out.iter().map(|r| r.len()).max().unwrap_or(0);
    let z_ok = out.last().is_some_and(|r| !r.is_empty());
    (z_ok && zb_deg == p.deg_zb() as usize + 1).then_some(out)
}

/// Gcd over `F_p[z, zb]` up to a scalar, by evaluating `zb` and interpolating.
fn gcd_image(f: Field, pz: &ZMajor, qz: &ZMajor) -> Option<ZMajor> {
    let cp = content(f, pz);
    let cq = content(f, qz);
    let c = gcd(f, &cp, &cq);
    let p1 = div_content(f, pz, &cp);
    let q1 = div_content(f, qz, &cq);
    if p1.len() == 1 || q1.len() == 1 {
        return Some(vec![c]);
    }
    let lp = p1.last().unwrap();
    let lq = q1.last().unwrap();
    let gamma = gcd(f, lp, lq);
    let zb_deg = |v: &ZMajor| v.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0);
    let needed = gamma.len() - 1 + zb_deg(&p1).min(zb_deg(&q1)) + 1;

    let mut degree = usize::MAX;
    let mut xs: Vec<u64> = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new();
    for x in 1..(needed as u64 + 64) {
        if eval(f, lp, x) == 0 || eval(f, lq, x) == 0 {
            continue;
        }
        let pe: Vec<u64> = p1.iter().map(|r| eval(f, r, x)).collect();
        let qe: Vec<u64> = q1.iter().map(|r| eval(f, r, x)).collect();
        let g = gcd(f, &pe, &qe);
        let d = g.len() - 1;
        if d == 0 {
            return Some(vec![c]);
        }
        match d.cmp(&degree) {
            Ordering::Greater => continue,
            Ordering::Less => {
                degree = d;
                xs.clear();
                images.clear();
            }
            Ordering::Equal => {}
        }
        xs.push(x);
        images.push(scale(f, &g, eval(f, &gamma, x)));
        if xs.len() == needed {
            let rows: Vec<Vec<u64>> = (0..=degree)
                .map(|k| images.iter().map(|g| g.get(k).copied().unwrap_or(0)).collect())
                .collect();
            let mut h: ZMajor = interpolate_rows(f, &xs, &rows);
            zmajor_trim(&mut h);
            let ch = content(f, &h);
            let h = div_content(f, &h, &ch);
            return Some(h.iter().map(|r| mul(f, r, &c)).collect());
        }
    }
    None
}

/// Graded-lex monic image as a sparse map, or `None` for the zero image.
fn monic_terms(f: Field, v: &ZMajor) -> Option<(Exp, BTreeMap<Exp, u64>)> {
    let mut terms = BTreeMap::new();
    for (a, row) in v.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            if *c != 0 {
                terms.insert((a as u32, b as u32), *c);
            }
        }
    }
    let lead = *terms.keys().max_by(|x, y| grlex_cmp(**x, **y))?;
    let inv = f.inv(terms[&lead]);
    for c in terms.values_mut() {
        *c = f.mul(*c, inv);
    }
    Some((lead, terms))
}

/// `r/s` with `|r|, s <= sqrt(m/2)` and `r ≡ s u (mod m)`, if one exists.
fn reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

struct Accumulator {
    lead: Exp,
    modulus: BigInt,
    /// Real and imaginary residues per exponent.
    residues: BTreeMap<Exp, (BigInt, BigInt)>,
}

impl Accumulator {
    fn combine(&mut self, p: u64, lead: Exp, image: BTreeMap<Exp, (u64, u64)>) {
        let keys: Vec<Exp> = self.residues.keys().chain(image.keys()).copied().collect();
        let pm = BigInt::from(p);
        // x ≡ r (mod M), x ≡ s (mod p): x = r + M * ((s - r) * M^{-1} mod p).
        let f = Field { p, iota: 0 };
        let m_inv = BigInt::from(f.inv(f.int(&self.modulus)));
        let lift = |r: &BigInt, s: u64| -> BigInt {
            let t = ((BigInt::from(s) - r) * &m_inv).mod_floor(&pm);
            r + &self.modulus * t
        };
        let mut next = BTreeMap::new();
        for k in keys {
            if next.contains_key(&k) {
                continue;
            }
            let zero = (BigInt::zero(), BigInt::zero());
            let (ra, rb) = self.residues.get(&k).unwrap_or(&zero);
            let (sa, sb) = image.get(&k).copied().unwrap_or((0, 0));
            next.insert(k, (lift(ra, sa), lift(rb, sb)));
        }
        self.lead = lead;
        self.modulus = &self.modulus * &pm;
        self.residues = next;
    }

    fn candidate(&self) -> Option<BiPoly> {
        let mut terms = Vec::with_capacity(self.residues.len());
        for (e, (a, b)) in &self.residues {
            let re = reconstruct(a, &self.modulus)?;
            let im = reconstruct(b, &self.modulus)?;
            terms.push((*e, GaussianRational::new(re, im)));
        }
        Some(BiPoly::from_terms(terms))
    }
}

const MAX_PRIMES: usize = 48;

/// Graded-lex monic gcd of two nonconstant polynomials, or `None` when the
/// modular route could not certify its answer.
pub(crate) fn modular_gcd(p: &BiPoly, q: &BiPoly) -> Option<BiPoly> {
    let mut acc: Option<Accumulator> = None;
    let mut last: Option<BiPoly> = None;
    for f in fields().take(MAX_PRIMES) {
        let g = f.conjugate();
        let (Some(p1), Some(q1), Some(p2), Some(q2)) = (image(f, p), image(f, q), image(g, p), image(g, q)) else {
            continue;
        };
        let (Some(h1), Some(h2)) = (gcd_image(f, &p1, &q1), gcd_image(g, &p2, &q2)) else {
            continue;
        };
        let (Some((lead1, t1)), Some((lead2, t2))) = (monic_terms(f, &h1), monic_terms(g, &h2)) else {
            continue;
        };
        if lead1 != lead2 {
            continue;
        }
        // a + b ι and a - b ι give back a and b.
        let inv2 = f.inv(2);
        let inv2i = f.inv(f.mul(2, f.iota));
        let mut split = BTreeMap::new();
        for k in t1.keys().chain(t2.keys()) {
            let x1 = t1.get(k).copied().unwrap_or(0);
            let x2 = t2.get(k).copied().unwrap_or(0);
            split.insert(*k, (f.mul(f.add(x1, x2), inv2), f.mul(f.sub(x1, x2), inv2i)));
        }
        match &mut acc {
            Some(a) if grlex_cmp(lead1, a.lead) == Ordering::Greater => continue,
            Some(a) if grlex_cmp(lead1, a.lead) == Ordering::Equal => a.combine(f.p, lead1, split),
            _ => {
                let mut a = Accumulator {
                    lead: lead1,
                    modulus: BigInt::one(),
                    residues: BTreeMap::new(),
                };
                a.combine(f.p, lead1, split);
                acc = Some(a);
                last = None;
            }
        }
        let cand = acc.as_ref().unwrap().candidate();
        if let Some(c) = cand.clone().filter(|_| cand == last) {
            let (Some(cp), Some(cq)) = (p.div_exact(&c), q.div_exact(&c)) else {
                last = Some(c);
                continue;
            };
            return (certified_free(&cp, &cq) == (true, true)).then_some(c);
        }
        last = cand;
    }
    None
}

const POINTS: [u64; 3] = [7, 1_000_003, 31_337];

/// True when the gcd of `p` and `q` provably has degree zero in the kept variable.
fn free_of(f: Field, p: &BiPoly, q: &BiPoly, keep_z: bool) -> bool {
    let deg = |x: &BiPoly| if keep_z { x.deg_z() } else { x.deg_zb() } as usize;
    if deg(p) == 0 || deg(q) == 0 {
        return true;
    }
    for c in POINTS {
        let (Some(ip), Some(iq)) = (restrict(f, p, c, keep_z), restrict(f, q, c, keep_z)) else {
            return false;
        };
        let kept = ip.last() != Some(&0) || iq.last() != Some(&0);
        if kept {
            return gcd(f, &ip, &iq).len() == 1;
        }
    }
    false
}

/// Image with one variable set to `c`, indexed by the exponent of the other.
fn restrict(f: Field, p: &BiPoly, c: u64, keep_z: bool) -> Option<Vec<u64>> {
    let (deg_keep, deg_drop) = if keep_z {
        (p.deg_z(), p.deg_zb())
    } else {
        (p.deg_zb(), p.deg_z())
    };
    let mut powers = Vec::with_capacity(deg_drop as usize + 1);
    let mut acc = 1;
    for _ in 0..=deg_drop {
        powers.push(acc);
        acc = f.mul(acc, c);
    }
    let mut out = vec![0u64; deg_keep as usize + 1];
    for ((a, b), coef) in p.terms() {
        let (k, d) = if keep_z { (*a, *b) } else { (*b, *a) };
        let v = f.mul(f.gaussian(coef)?, powers[d as usize]);
        out[k as usize] = f.add(out[k as usize], v);
    }
    Some(out)
}

/// Which variables the gcd of `p` and `q` is certified to be free of, as `(z, zb)`.
///
/// Setting one variable to a constant keeps the degree of any common factor
/// in the other variable whenever an operand keeps its leading coefficient,
/// so a trivial image gcd proves the true gcd is free of that variable.
pub(crate) fn certified_free(p: &BiPoly, q: &BiPoly) -> (bool, bool) {
    let f = fields().next().expect("a prime exists");
    (free_of(f, p, q, true), free_of(f, p, q, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn first() -> Field {
        fields().next().unwrap()
    }

    #[test]
    fn iota_squares_to_minus_one() {
        for f in fields().take(3) {
            assert_eq!(f.p % 4, 1);
            assert_eq!(f.mul(f.iota, f.iota), f.p - 1);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(998_244_353));
        assert!(!is_prime(998_244_353 * 3));
        assert!(!is_prime(561));
    }

    #[test]
    fn coprime_pair_is_certified() {
        let a = BiPoly::one_plus_zzb();
        let b = BiPoly::z().add(&BiPoly::constant(c(2)));
        assert_eq!(certified_free(&a, &b), (true, true));
    }

    #[test]
    fn common_factor_is_never_certified() {
        let g = BiPoly::one_plus_zzb();
        let a = g.mul(&BiPoly::z().add(&BiPoly::constant(GaussianRational::i())));
        let b = g.mul(&BiPoly::zb().sub(&BiPoly::constant(c(3))));
        assert_eq!(certified_free(&a, &b), (false, false));
    }

    #[test]
    fn factor_in_one_variable() {
        let w = BiPoly::zb().add(&BiPoly::constant(c(5)));
        let a = w.mul(&BiPoly::z().add(&BiPoly::one()));
        let b = w.mul(&BiPoly::z().sub(&BiPoly::one()));
        assert_eq!(certified_free(&a, &b), (true, false));
    }

    #[test]
    fn interpolation_recovers_a_polynomial() {
        let f = first();
        let poly = vec![3, 0, 5, 1];
        let xs = [1, 2, 3, 4];
        let ys: Vec<u64> = xs.iter().map(|x| eval(f, &poly, *x)).collect();
        assert_eq!(interpolate_rows(f, &xs, &[ys]), vec![poly]);
    }

    #[test]
    fn rational_reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let u = (BigInt::from(-3) * BigInt::from(f_inv(7, 1_000_000_007))).mod_floor(&m);
        assert_eq!(reconstruct(&u, &m), Some(BigRational::new((-3).into(), 7.into())));
    }

    fn f_inv(a: u64, p: u64) -> u64 {
        Field { p, iota: 0 }.inv(a)
    }

    #[test]
    fn modular_gcd_with_gaussian_coefficients() {
        let g = BiPoly::from_terms(vec![
            ((1, 1), GaussianRational::from_ratios(2, 3, 1, 5)),
            ((1, 0), GaussianRational::i()),
            ((0, 0), c(-7)),
        ]);
        let a = g.mul(
            &BiPoly::z()
                .pow(2)
                .add(&BiPoly::zb().scale(&GaussianRational::from_ratios(1, 2, 0, 1))),
        );
        let b = g.mul(
            &BiPoly::zb()
                .pow(3)
                .sub(&BiPoly::constant(GaussianRational::from_ratios(0, 1, 3, 1))),
        );
        assert_eq!(modular_gcd(&a, &b), Some(g.monic()));
    }
}
