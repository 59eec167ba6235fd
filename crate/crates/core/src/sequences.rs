//! Veronese sequences, the forward recursion for sections, the `∂′`/`∂″`
//! transforms of projection bundles, L-values, Kähler angle, isotropy order,
//! and the Plücker residual.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{BiPoly, GaussianRational, RationalFunction};
use crate::ambient::{independent_subset, span_projection, unify_spaces, winner, MatRF, VecRF, WeightedSpace};
use crate::error::{Error, Result};

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// The weighted space `C^(n+1)` with `w_j = C(n, j)`.
pub fn veronese_space(n: usize) -> WeightedSpace {
    WeightedSpace::new(
        (0..=n as i64)
            .map(|j| BigRational::from_integer(binom(n as i64, j)))
            .collect(),
    )
    .expect("binomials are positive")
}

/// The `i`-th section of the Veronese sequence in `CP^n`, with the
/// `sqrt(C(n, j))` factors moved into the weights.
///
/// Component `j` is `i!/(1+z zb)^i * sum_k (-1)^k C(j, i-k) C(n-j, k) z^(j-i+k) zb^k`.
pub fn veronese(n: i64, i: i64) -> Result<VecRF> {
    if n < 0 || i < 0 || i > n {
        return Err(Error::VeroneseRange { n, i });
    }
    let scale = RationalFunction::from_rational(BigRational::from_integer(factorial(i)))
        .div(&RationalFunction::from_poly(BiPoly::one_plus_zzb().pow(i as u32)))?;
    let comps = (0..=n)
        .map(|j| {
            let mut terms = Vec::new();
            for k in 0..=i {
                let c = binom(j, i - k) * binom(n - j, k);
                if c.is_zero() {
                    continue;
                }
                let c = if k % 2 == 1 { -c } else { c };
                let a = (j - i + k) as u32;
                terms.push(((a, k as u32), GaussianRational::from_real(BigRational::from_integer(c))));
            }
            RationalFunction::from_poly(BiPoly::from_terms(terms)).mul(&scale)
        })
        .collect();
    VecRF::new(veronese_space(n as usize), comps)
}

/// `n! i! / (n-i)! (1 + z zb)^(n-2i)`, the closed-form squared norm of `veronese(n, i)`.
pub fn veronese_norm(n: i64, i: i64) -> RationalFunction {
    let c = BigRational::from_integer(factorial(n) * factorial(i)) / BigRational::from_integer(factorial(n - i));
    let e = n - 2 * i;
    let base = RationalFunction::from_poly(BiPoly::one_plus_zzb().pow(e.unsigned_abs() as u32));
    let f = if e >= 0 { base } else { base.inv().expect("nonzero") };
    f.scale_rational(&c)
}

/// `∂f - (<∂f, f> / |f|^2) f` without rescaling.
pub fn next_section_raw(f: &VecRF) -> Result<VecRF> {
    if f.is_zero() {
        return Err(Error::ZeroSection);
    }
    let df = f.d_z();
    let c = winner(&df, f)?.div(&winner(f, f)?)?;
    df.sub(&f.scale(&c))
}

/// The next section of the harmonic sequence, content-normalized.
pub fn next_section(f: &VecRF) -> Result<VecRF> {
    let g = next_section_raw(f)?;
    if g.is_zero() {
        return Err(Error::ZeroSection);
    }
    g.content_normalized()
}

/// `∂̄f_i + (|f_i|^2 / |f_prev|^2) f_prev`; with a zero `f_prev` just `∂̄f_i`.
pub fn backward_check(fi: &VecRF, fprev: &VecRF) -> Result<VecRF> {
    let d = fi.d_zb();
    if fprev.is_zero() {
        return Ok(d);
    }
    let c = winner(fi, fi)?.div(&winner(fprev, fprev)?)?;
    d.add(&fprev.scale(&c))
}

/// Sections `f_0, f_1, ...` of the forward recursion, unnormalized, with cached norms.
#[derive(Clone, Debug)]
pub struct SectionChain {
    pub sections: Vec<VecRF>,
    pub norms: Vec<RationalFunction>,
}

impl SectionChain {
    /// Runs the recursion from `f0` until the section vanishes or `max_len` is reached.
    pub fn from_start(f0: VecRF, max_len: usize) -> Result<Self> {
        if f0.is_zero() {
            return Err(Error::ZeroSection);
        }
        let mut sections = vec![f0];
        let mut norms = vec![winner(&sections[0], &sections[0])?];
        while sections.len() < max_len {
            let last = sections.last().unwrap();
            let df = last.d_z();
            let c = winner(&df, last)?.div(norms.last().unwrap())?;
            let next = df.sub(&last.scale(&c))?;
            if next.is_zero() {
                break;
            }
            norms.push(winner(&next, &next)?);
            sections.push(next);
        }
        Ok(Self { sections, norms })
    }

    /// The full Veronese chain of `CP^n`, started from `veronese(n, 0)`.
    pub fn veronese(n: i64) -> Result<Self> {
        Self::from_start(veronese(n, 0)?, n as usize + 2)
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    /// Residuals of the backward identity, one per consecutive pair.
    pub fn backward_residuals(&self) -> Result<Vec<VecRF>> {
        self.sections.windows(2).map(|w| backward_check(&w[1], &w[0])).collect()
    }
}

/// A Hermitian projection bundle together with spanning sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMap {
    space: WeightedSpace,
    projection: MatRF,
    rank: usize,
    sections: Vec<VecRF>,
}

impl BundleMap {
    /// The distinguished rank-0 bundle ending a harmonic sequence.
    pub fn null(space: WeightedSpace) -> Self {
        Self {
            projection: MatRF::zero(space.clone()),
            space,
            rank: 0,
            sections: Vec::new(),
        }
    }

    pub fn space(&self) -> &WeightedSpace {
        &self.space
    }

    pub fn projection(&self) -> &MatRF {
        &self.projection
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sections(&self) -> &[VecRF] {
        &self.sections
    }

    pub fn is_null(&self) -> bool {
        self.rank == 0
    }

    /// The same bundle with its sections replaced by `T v`, where `T` is a
    /// matrix of constants; for a weighted isometry the result is congruent.
    pub fn transformed(&self, t: &[Vec<GaussianRational>]) -> Result<Self> {
        let n = self.space.dim();
        if t.len() != n || t.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.len(),
            });
        }
        let rows = t
            .iter()
            .map(|r| r.iter().map(|c| RationalFunction::constant(c.clone())).collect())
            .collect();
        let m = MatRF::from_rows(self.space.clone(), rows)?;
        let vs: Vec<VecRF> = self.sections.iter().map(|v| m.mul_vec(v)).collect::<Result<_>>()?;
        bundle_from_sections(&vs)
    }
}

/// The projection bundle spanned by `vs`, after weight unification and
/// content normalization of each section.
pub fn bundle_from_sections(vs: &[VecRF]) -> Result<BundleMap> {
    let unified = unify_spaces(vs)?;
    let sections: Vec<VecRF> = unified.iter().map(VecRF::content_normalized).collect::<Result<_>>()?;
    let projection = span_projection(&sections)?;
    Ok(BundleMap {
        space: sections[0].space().clone(),
        rank: sections.len(),
        projection,
        sections,
    })
}

/// Appends `k` zero coordinates of weight 1.
pub fn pad_end(v: &VecRF, k: usize) -> VecRF {
    let mut w = v.space().weights().to_vec();
    w.extend(std::iter::repeat_n(BigRational::one(), k));
    let mut c = v.components().to_vec();
    c.extend(std::iter::repeat_n(RationalFunction::zero(), k));
    VecRF::new(WeightedSpace::new(w).expect("positive"), c).expect("matching lengths")
}

/// Prepends `k` zero coordinates of weight 1.
pub fn pad_front(v: &VecRF, k: usize) -> VecRF {
    let mut w = vec![BigRational::one(); k];
    w.extend_from_slice(v.space().weights());
    let mut c = vec![RationalFunction::zero(); k];
    c.extend_from_slice(v.components());
    VecRF::new(WeightedSpace::new(w).expect("positive"), c).expect("matching lengths")
}

/// Direct sum of two vectors; the weight lists are concatenated.
pub fn concat(u: &VecRF, v: &VecRF) -> VecRF {
    let mut w = u.space().weights().to_vec();
    w.extend_from_slice(v.space().weights());
    let mut c = u.components().to_vec();
    c.extend_from_slice(v.components());
    VecRF::new(WeightedSpace::new(w).expect("positive"), c).expect("matching lengths")
}

/// The coordinate vector `e_index` of `space`.
pub fn const_coord(space: &WeightedSpace, index: usize) -> Result<VecRF> {
    VecRF::basis(space.clone(), index)
}

/// A one-coordinate vector with the given weight and constant value.
pub fn const_vector(weight: BigRational, value: GaussianRational) -> Result<VecRF> {
    VecRF::new(
        WeightedSpace::new(vec![weight])?,
        vec![RationalFunction::constant(value)],
    )
}

/// `(I - φ) x`.
fn perp(phi: &MatRF, x: &VecRF) -> Result<VecRF> {
    x.sub(&phi.mul_vec(x)?)
}

fn transform(b: &BundleMap, diff: fn(&VecRF) -> VecRF) -> Result<BundleMap> {
    if b.is_null() {
        return Ok(b.clone());
    }
    let cols: Vec<VecRF> = b
        .sections
        .iter()
        .map(|v| perp(&b.projection, &diff(v)))
        .collect::<Result<_>>()?;
    let idx = independent_subset(&cols);
    if idx.is_empty() {
        return Ok(BundleMap::null(b.space.clone()));
    }
    let chosen: Vec<VecRF> = idx
        .into_iter()
        .map(|i| cols[i].content_normalized())
        .collect::<Result<_>>()?;
    let projection = span_projection(&chosen)?;
    Ok(BundleMap {
        space: b.space.clone(),
        rank: chosen.len(),
        projection,
        sections: chosen,
    })
}

/// `∂′φ`: projection onto the image of `(I - φ) ∂φ φ`.
pub fn dprime_transform(b: &BundleMap) -> Result<BundleMap> {
    transform(b, VecRF::d_z)
}

/// `∂″φ`: projection onto the image of `(I - φ) ∂̄φ φ`.
pub fn dsecond_transform(b: &BundleMap) -> Result<BundleMap> {
    transform(b, VecRF::d_zb)
}

/// `(I - φ) D φ` for a derivative `D` of `φ` already computed.
pub(crate) fn second_fundamental_piece(phi: &MatRF, dphi: &MatRF) -> Result<MatRF> {
    let q = MatRF::identity(phi.space().clone()).sub(phi)?;
    q.mul(dphi)?.mul(phi)
}

/// `X = (I - φ) ∂φ φ`, the operator whose image defines `∂′φ`.
pub fn a_prime(b: &BundleMap) -> Result<MatRF> {
    second_fundamental_piece(&b.projection, &b.projection.d_z())
}

/// `(I - φ) ∂̄φ φ`.
pub fn a_second(b: &BundleMap) -> Result<MatRF> {
    second_fundamental_piece(&b.projection, &b.projection.d_zb())
}

/// `L_out = tr(X X^†)` with `X = (I - φ) ∂φ φ`.
pub fn l_out(b: &BundleMap) -> Result<RationalFunction> {
    Ok(a_prime(b)?.norm_sq())
}

/// `L_in = tr(Y Y^†)` with `Y = (I - φ) ∂̄φ φ`.
pub fn l_in(b: &BundleMap) -> Result<RationalFunction> {
    Ok(a_second(b)?.norm_sq())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KahlerFlag {
    Holomorphic,
    AntiHolomorphic,
    TotallyReal,
    General,
}

impl KahlerFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            KahlerFlag::Holomorphic => "holomorphic",
            KahlerFlag::AntiHolomorphic => "anti_holomorphic",
            KahlerFlag::TotallyReal => "totally_real",
            KahlerFlag::General => "general",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "holomorphic" => KahlerFlag::Holomorphic,
            "anti_holomorphic" => KahlerFlag::AntiHolomorphic,
            "totally_real" => KahlerFlag::TotallyReal,
            "general" => KahlerFlag::General,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerStatus {
    pub flag: KahlerFlag,
    /// `tan^2(θ/2) = L_in / L_out`; `None` for anti-holomorphic maps, where it is infinite.
    pub tan2_half: Option<RationalFunction>,
}

/// Classifies the Kähler angle from precomputed L-values.
pub fn kahler_from_l(l_in: &RationalFunction, l_out: &RationalFunction) -> Result<KahlerStatus> {
    match (l_in.is_zero(), l_out.is_zero()) {
        (true, true) => Err(Error::ConstantMap),
        (true, false) => Ok(KahlerStatus {
            flag: KahlerFlag::Holomorphic,
            tan2_half: Some(RationalFunction::zero()),
        }),
        (false, true) => Ok(KahlerStatus {
            flag: KahlerFlag::AntiHolomorphic,
            tan2_half: None,
        }),
        (false, false) => {
            let t = l_in.div(l_out)?;
            let flag = if t.is_one() {
                KahlerFlag::TotallyReal
            } else {
                KahlerFlag::General
            };
            Ok(KahlerStatus {
                flag,
                tan2_half: Some(t),
            })
        }
    }
}

pub fn kahler_status(b: &BundleMap) -> Result<KahlerStatus> {
    kahler_from_l(&l_in(b)?, &l_out(b)?)
}

/// Isotropy order `r`: the largest `r` with `φ ⊥ φ_i` for `1 ≤ i ≤ r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsotropyOrder {
    Finite(usize),
    /// Orthogonality held up to the search bound.
    AtLeast(usize),
    /// The sequence terminated with every `φ_i` orthogonal to `φ`.
    Infinite,
}

impl IsotropyOrder {
    /// `"r"`, `"geq:r"` or `"inf"`.
    pub fn label(self) -> String {
        match self {
            IsotropyOrder::Finite(r) => r.to_string(),
            IsotropyOrder::AtLeast(r) => format!("geq:{r}"),
            IsotropyOrder::Infinite => "inf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s == "inf" {
            return Some(IsotropyOrder::Infinite);
        }
        if let Some(r) = s.strip_prefix("geq:") {
            return r.parse().ok().map(IsotropyOrder::AtLeast);
        }
        s.parse().ok().map(IsotropyOrder::Finite)
    }

    /// True when this value is compatible with the expectation `e`, where an
    /// `AtLeast(m)` expectation accepts any order of at least `m`.
    pub fn satisfies(self, e: IsotropyOrder) -> bool {
        match e {
            IsotropyOrder::AtLeast(m) => match self {
                IsotropyOrder::Finite(r) => r >= m,
                IsotropyOrder::AtLeast(r) => r >= m,
                IsotropyOrder::Infinite => true,
            },
            other => self == other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyReport {
    pub order: IsotropyOrder,
    /// First index `i` at which `rank φ_i` is smaller than `rank φ_{i-1}`.
    pub rank_drop: Option<usize>,
    /// Ranks of `φ_1, φ_2, ...` as walked.
    pub ranks: Vec<usize>,
}

/// Walks `φ_1, φ_2, ...` by `∂′` up to `bound` steps.
pub fn isotropy_order(b: &BundleMap, bound: usize) -> Result<IsotropyReport> {
    let bound = bound.max(1);
    let mut cur = b.clone();
    let mut ranks = Vec::new();
    let mut rank_drop = None;
    for i in 1..=bound {
        let next = dprime_transform(&cur)?;
        if next.rank < cur.rank && rank_drop.is_none() {
            rank_drop = Some(i);
        }
        ranks.push(next.rank);
        if next.is_null() {
            return Ok(IsotropyReport {
                order: IsotropyOrder::Infinite,
                rank_drop,
                ranks,
            });
        }
        if !b.projection.trace_of_product(&next.projection)?.is_zero() {
            return Ok(IsotropyReport {
                order: IsotropyOrder::Finite(i - 1),
                rank_drop,
                ranks,
            });
        }
        cur = next;
    }
    Ok(IsotropyReport {
        order: IsotropyOrder::AtLeast(bound),
        rank_drop,
        ranks,
    })
}

/// `e_2(M) = ((tr M)^2 - tr M^2) / 2`, the second elementary symmetric
/// function of the eigenvalues of `M`.
pub fn e2(m: &MatRF) -> Result<RationalFunction> {
    let t = m.trace();
    let t2 = m.trace_of_product(m)?;
    Ok(t.mul(&t).sub(&t2).scale_rational(&BigRational::new(1.into(), 2.into())))
}

/// Residual of the unintegrated Plücker formula for a rank-2 bundle whose
/// `∂′` image has rank 2:
/// `∂∂̄ log e_2(X X^†) - (L_1 - 2 L_0 + L_{-1})`, with `X = (I - φ) ∂φ φ`,
/// `L_0 = l_out(φ)`, `L_1 = l_out(∂′φ)`, `L_{-1} = l_in(φ)`.
///
/// For holomorphic maps `L_{-1}` vanishes and this is `∂∂̄ log|det Ω_0|^2 + 2L_0 - L_1`.
pub fn plucker_residual(b: &BundleMap) -> Result<RationalFunction> {
    let x = a_prime(b)?;
    let m = x.mul(&x.wadjoint())?;
    let e = e2(&m)?;
    if b.rank != 2 || e.is_zero() {
        return Err(Error::ReducibleImage);
    }
    let l0 = x.norm_sq();
    let l1 = l_out(&dprime_transform(b)?)?;
    let lm1 = l_in(b)?;
    Ok(e.log_laplacian()?
        .add(&l0.scale_rational(&BigRational::from_integer(2.into())))
        .sub(&l1)
        .sub(&lm1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs() -> RationalFunction {
        RationalFunction::from_poly(BiPoly::one_plus_zzb())
    }

    fn rf_vec(space: WeightedSpace, cs: Vec<RationalFunction>) -> VecRF {
        VecRF::new(space, cs).unwrap()
    }

    #[test]
    fn veronese_degree_two_start() {
        let v = veronese(2, 0).unwrap();
        let z = RationalFunction::z();
        assert_eq!(v.components(), &[RationalFunction::one(), z.clone(), z.pow(2)]);
        assert_eq!(v.space(), &WeightedSpace::from_ints(&[1, 2, 1]).unwrap());
        assert_eq!(winner(&v, &v).unwrap(), fs().pow(2));
    }

    #[test]
    fn veronese_line_end() {
        let v = veronese(1, 1).unwrap();
        let d = fs().inv().unwrap();
        assert_eq!(v.components(), &[RationalFunction::zb().neg().mul(&d), d]);
    }

    #[test]
    fn veronese_middle_of_conic() {
        let v = veronese(2, 1).unwrap();
        let d = fs().inv().unwrap();
        let zzb = RationalFunction::z().mul(&RationalFunction::zb());
        let two = RationalFunction::from_int(2);
        assert_eq!(
            v.components(),
            &[
                RationalFunction::zb().mul(&two).neg().mul(&d),
                RationalFunction::one().sub(&zzb).mul(&d),
                RationalFunction::z().mul(&two).mul(&d),
            ]
        );
        assert_eq!(winner(&v, &v).unwrap(), RationalFunction::from_int(2));
    }

    #[test]
    fn veronese_range_is_checked() {
        assert!(matches!(veronese(2, 3), Err(Error::VeroneseRange { .. })));
        assert!(matches!(veronese(2, -1), Err(Error::VeroneseRange { .. })));
    }

    #[test]
    fn next_section_of_line() {
        let f = rf_vec(
            WeightedSpace::standard(2),
            vec![RationalFunction::one(), RationalFunction::z()],
        );
        let g = next_section(&f).unwrap();
        let expected = veronese(1, 1).unwrap().content_normalized().unwrap();
        assert_eq!(g.components(), expected.components());
    }

    #[test]
    fn next_section_of_constant_fails() {
        let c = VecRF::basis(WeightedSpace::standard(3), 2).unwrap();
        assert!(matches!(next_section(&c), Err(Error::ZeroSection)));
    }

    #[test]
    fn raw_chain_reproduces_closed_form() {
        let chain = SectionChain::veronese(3).unwrap();
        assert_eq!(chain.len(), 4);
        for (i, f) in chain.sections.iter().enumerate() {
            assert_eq!(f, &veronese(3, i as i64).unwrap());
        }
    }

    #[test]
    fn backward_identity_on_chains() {
        for n in [2, 3] {
            let chain = SectionChain::veronese(n).unwrap();
            for r in chain.backward_residuals().unwrap() {
                assert!(r.is_zero());
            }
        }
        let f0 = veronese(2, 0).unwrap();
        let zero = VecRF::zero(f0.space().clone());
        assert!(backward_check(&f0, &zero).unwrap().is_zero());
    }

    #[test]
    fn padding_and_concat() {
        let v = pad_front(&veronese(1, 0).unwrap(), 2);
        let z = RationalFunction::z();
        let zero = RationalFunction::zero();
        assert_eq!(
            v.components(),
            &[zero.clone(), zero.clone(), RationalFunction::one(), z.clone()]
        );
        let w = pad_end(&veronese(2, 0).unwrap(), 3);
        assert_eq!(w.dim(), 6);
        assert_eq!(w.space(), &WeightedSpace::from_ints(&[1, 2, 1, 1, 1, 1]).unwrap());
        let a = concat(
            &veronese(4, 2).unwrap(),
            &const_vector(BigRational::from_integer(48.into()), GaussianRational::one()).unwrap(),
        );
        assert_eq!(a.space(), &WeightedSpace::from_ints(&[1, 4, 6, 4, 1, 48]).unwrap());
    }

    #[test]
    fn transforms_walk_the_veronese_sequence() {
        let b0 = bundle_from_sections(&[veronese(2, 0).unwrap()]).unwrap();
        let b1 = bundle_from_sections(&[veronese(2, 1).unwrap()]).unwrap();
        let b2 = bundle_from_sections(&[veronese(2, 2).unwrap()]).unwrap();
        assert_eq!(dprime_transform(&b0).unwrap().projection(), b1.projection());
        assert_eq!(dprime_transform(&b1).unwrap().projection(), b2.projection());
        assert!(dprime_transform(&b2).unwrap().is_null());
        assert_eq!(dsecond_transform(&b1).unwrap().projection(), b0.projection());
        assert!(dsecond_transform(&b0).unwrap().is_null());
    }

    #[test]
    fn frenet_pair_of_conic() {
        let b = bundle_from_sections(&[veronese(2, 0).unwrap(), veronese(2, 1).unwrap()]).unwrap();
        assert_eq!(b.projection().trace(), RationalFunction::from_int(2));
        let up = dprime_transform(&b).unwrap();
        let top = bundle_from_sections(&[veronese(2, 2).unwrap()]).unwrap();
        assert_eq!(up.projection(), top.projection());
        assert!(dsecond_transform(&b).unwrap().is_null());
        let expected_out = RationalFunction::from_int(2).div(&fs().pow(2)).unwrap();
        assert_eq!(l_out(&b).unwrap(), expected_out);
        assert!(l_in(&b).unwrap().is_zero());
        assert_eq!(a_prime(&b).unwrap().generic_rank(), 1);
        assert_eq!(kahler_status(&b).unwrap().flag, KahlerFlag::Holomorphic);
        assert_eq!(isotropy_order(&b, 6).unwrap().order, IsotropyOrder::Infinite);
    }

    #[test]
    fn middle_conic_is_totally_real() {
        let b = bundle_from_sections(&[veronese(2, 1).unwrap()]).unwrap();
        let k = kahler_status(&b).unwrap();
        assert_eq!(k.flag, KahlerFlag::TotallyReal);
        assert!(k.tan2_half.unwrap().is_one());
    }

    #[test]
    fn holomorphic_line_has_no_inward_l() {
        let b = bundle_from_sections(&[veronese(3, 0).unwrap()]).unwrap();
        assert!(l_in(&b).unwrap().is_zero());
    }

    #[test]
    fn plucker_on_conic_chain_norms() {
        // Rank-one analogue on the conic with L_i = |f_(i+1)|^2 / |f_i|^2 from
        // the closed-form norms: ∂∂̄ log L_0 = L_1 - 2 L_0 since L_(-1) = 0.
        let (n0, n1, n2) = (veronese_norm(2, 0), veronese_norm(2, 1), veronese_norm(2, 2));
        let l0 = n1.div(&n0).unwrap();
        let l1 = n2.div(&n1).unwrap();
        let lhs = n1.log_laplacian().unwrap().sub(&n0.log_laplacian().unwrap());
        assert_eq!(lhs, l1.sub(&l0.scale_rational(&BigRational::from_integer(2.into()))));
        assert_eq!(lhs, l0.log_laplacian().unwrap());
    }

    #[test]
    fn constant_bundle_is_rejected_by_kahler() {
        let s = WeightedSpace::standard(3);
        let b = bundle_from_sections(&[VecRF::basis(s.clone(), 1).unwrap(), VecRF::basis(s, 2).unwrap()]).unwrap();
        assert!(matches!(kahler_status(&b), Err(Error::ConstantMap)));
    }
}
