//! Recursive bivariate gcd.
//!
//! A polynomial is viewed in `Q(i)[zb][z]`. Contents (gcds of the `z`
//! coefficients) are handled with the univariate Euclidean algorithm and the
//! primitive parts with a subresultant remainder sequence, whose divisions in
//! `Q(i)[zb]` are exact.

use super::gaussian::GaussianRational;
use super::modular::{certified_free, modular_gcd};
use super::poly::BiPoly;
use super::univariate::UniPoly;

/// Coefficients in `Q(i)[zb]`, indexed by the degree in `z`, without trailing zeros.
type ZMajor = Vec<UniPoly>;

fn to_zmajor(p: &BiPoly) -> ZMajor {
    let mut out: ZMajor = vec![UniPoly::zero(); p.deg_z() as usize + 1];
    let mut rows: Vec<Vec<GaussianRational>> = vec![Vec::new(); out.len()];
    for ((a, b), c) in p.terms() {
        let row = &mut rows[*a as usize];
        if row.len() <= *b as usize {
            row.resize(*b as usize + 1, GaussianRational::default());
        }
        row[*b as usize] = c.clone();
    }
    for (slot, row) in out.iter_mut().zip(rows) {
        *slot = UniPoly::from_coeffs(row);
    }
    trim(&mut out);
    out
}

fn from_zmajor(v: &ZMajor) -> BiPoly {
    BiPoly::from_terms(v.iter().enumerate().flat_map(|(a, u)| {
        u.coeffs()
            .iter()
            .enumerate()
            .map(move |(b, c)| ((a as u32, b as u32), c.clone()))
    }))
}

fn trim(v: &mut ZMajor) {
    while v.last().is_some_and(|u| u.is_zero()) {
        v.pop();
    }
}

fn deg(v: &ZMajor) -> usize {
    v.len().saturating_sub(1)
}

fn content(v: &ZMajor) -> UniPoly {
    let mut g = UniPoly::zero();
    for u in v {
        if u.is_zero() {
            continue;
        }
        g = g.gcd(u);
        if g.is_constant() {
            return UniPoly::one();
        }
    }
    g
}

fn scale(v: &ZMajor, s: &UniPoly) -> ZMajor {
    v.iter().map(|u| u.mul(s)).collect()
}

fn div_scalar(v: &ZMajor, s: &UniPoly) -> ZMajor {
    if s.is_constant() {
        let inv = s.lc().inv().expect("nonzero divisor");
        return v.iter().map(|u| u.scale(&inv)).collect();
    }
    v.iter()
        .map(|u| u.div_exact(s).expect("exact division in the remainder sequence"))
        .collect()
}

/// Pseudo-remainder `prem(a, b)` in `Q(i)[zb][z]`.
fn prem(a: &ZMajor, b: &ZMajor) -> ZMajor {
    let db = deg(b);
    let lb = b.last().expect("nonzero").clone();
    let mut r = a.clone();
    let mut e = deg(a) as i64 - db as i64 + 1;
    while !r.is_empty() && deg(&r) >= db {
        let lr = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        let mut next: ZMajor = r.iter().map(|u| u.mul(&lb)).collect();
        for (k, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                next[k + shift] = next[k + shift].sub(&bc.mul(&lr));
            }
        }
        trim(&mut next);
        r = next;
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        r = scale(&r, &f);
    }
    r
}

/// Gcd of two primitive polynomials (in `z` over `Q(i)[zb]`), up to a unit.
fn primitive_gcd(a: ZMajor, b: ZMajor) -> ZMajor {
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    if deg(&b) == 0 {
        return vec![UniPoly::one()];
    }
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            let c = content(&b);
            return div_scalar(&b, &c);
        }
        if deg(&r) == 0 {
            return vec![UniPoly::one()];
        }
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = div_scalar(&r, &divisor);
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("exact division in the remainder sequence"),
        };
    }
}

/// Greatest common divisor, normalized so its graded-lex leading coefficient is 1.
///
/// `gcd(0, 0)` is returned as `0`.
pub fn poly_gcd(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return BiPoly::one();
    }
    let (pa, pb) = p.min_exponents();
    let (qa, qb) = q.min_exponents();
    let p1 = p.unshift(pa, pb);
    let q1 = q.unshift(qa, qb);
    let core = gcd_no_monomial(&p1, &q1);
    core.shift(pa.min(qa), pb.min(qb)).monic()
}

fn gcd_no_monomial(p: &BiPoly, q: &BiPoly) -> BiPoly {
    if p.is_constant() || q.is_constant() {
        return BiPoly::one();
    }
    if p == q {
        return p.clone();
    }
    let (z_free, zb_free) = certified_free(p, q);
    if z_free && zb_free {
        return BiPoly::one();
    }
    // Trial division settles the frequent case where one operand divides the other.
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    if !z_free {
        if let Some(g) = modular_gcd(p, q) {
            return g;
        }
    }
    subresultant_gcd(p, q, z_free)
}

/// Exact content and primitive-part gcd; `z_free` skips the primitive parts.
fn subresultant_gcd(p: &BiPoly, q: &BiPoly, z_free: bool) -> BiPoly {
    let pz = to_zmajor(p);
    let qz = to_zmajor(q);
    let cp = content(&pz);
    let cq = content(&qz);
    let cg = cp.gcd(&cq);
    let cg_bi = from_zmajor(&vec![cg]);
    if z_free || deg(&pz) == 0 || deg(&qz) == 0 {
        return cg_bi;
    }
    let ppz = div_scalar(&pz, &cp);
    let qqz = div_scalar(&qz, &cq);
    let g = primitive_gcd(ppz, qqz);
    from_zmajor(&g).mul(&cg_bi)
}
