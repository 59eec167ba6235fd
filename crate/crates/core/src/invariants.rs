//! Metric, Gauss curvature, second fundamental form and the harmonicity and
//! parallelism residuals of a projection bundle.

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{GaussianRational, RationalFunction};
use crate::ambient::MatRF;
use crate::error::{Error, Result};
use crate::sequences::{
    isotropy_order, kahler_from_l, second_fundamental_piece, BundleMap, IsotropyReport, KahlerStatus,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `A_z = (2φ - I) ∂φ`.
pub fn a_z(b: &BundleMap) -> Result<MatRF> {
    reflection(b)?.mul(&b.projection().d_z())
}

/// `A_z̄ = (2φ - I) ∂̄φ`.
pub fn a_zb(b: &BundleMap) -> Result<MatRF> {
    reflection(b)?.mul(&b.projection().d_zb())
}

fn reflection(b: &BundleMap) -> Result<MatRF> {
    let phi = b.projection();
    phi.scale_const(&GaussianRational::from_int(2))
        .sub(&MatRF::identity(phi.space().clone()))
}

fn lambda2_from(az: &MatRF, azb: &MatRF) -> Result<RationalFunction> {
    Ok(az.trace_of_product(azb)?.neg())
}

/// `λ^2 = -tr(A_z A_z̄)`, the conformal factor of the induced metric.
pub fn metric_lambda2(b: &BundleMap) -> Result<RationalFunction> {
    lambda2_from(&a_z(b)?, &a_zb(b)?)
}

fn curvature_from(l2: &RationalFunction) -> Result<RationalFunction> {
    if l2.is_zero() {
        return Err(Error::DegenerateMetric);
    }
    l2.log_laplacian()?.div(l2).map(|k| k.scale_rational(&q(-2, 1)))
}

/// `K = -2 ∂∂̄ log λ^2 / λ^2`.
pub fn gauss_curvature(b: &BundleMap) -> Result<Invariant> {
    Ok(Invariant::new(curvature_from(&metric_lambda2(b)?)?))
}

fn p_from(az: &MatRF, l2: &RationalFunction) -> Result<MatRF> {
    Ok(az.scale(&l2.inv().map_err(|_| Error::DegenerateMetric)?).d_z())
}

/// `P = ∂(A_z / λ^2)`.
pub fn p_tensor(b: &BundleMap) -> Result<MatRF> {
    let az = a_z(b)?;
    let l2 = lambda2_from(&az, &a_zb(b)?)?;
    p_from(&az, &l2)
}

fn b2_from(p: &MatRF) -> RationalFunction {
    p.norm_sq().scale_rational(&q(4, 1))
}

/// `‖B‖^2 = 4 tr(P P^*)`.
pub fn b_norm_sq(b: &BundleMap) -> Result<Invariant> {
    Ok(Invariant::new(b2_from(&p_tensor(b)?)))
}

/// `M_1 = -λ^2 (2K + ‖B‖^2) / 4` and `M_2 = λ^2 (K - ‖B‖^2 / 4)`.
pub fn m_constants(
    k: &RationalFunction,
    b2: &RationalFunction,
    l2: &RationalFunction,
) -> (RationalFunction, RationalFunction) {
    let m1 = l2.mul(&k.scale_rational(&q(2, 1)).add(b2)).scale_rational(&q(-1, 4));
    let m2 = l2.mul(&k.sub(&b2.scale_rational(&q(1, 4))));
    (m1, m2)
}

/// `∂̄A_z - [A_z, A_z̄]`; zero iff the map is harmonic.
pub fn harmonic_residual(b: &BundleMap) -> Result<MatRF> {
    let az = a_z(b)?;
    let azb = a_zb(b)?;
    az.d_zb().sub(&az.commutator(&azb)?)
}

/// The two matrix conditions necessary for a parallel second fundamental form:
/// `λ^2 (2K + ‖B‖^2) A_z̄ + 4 [A_z̄, [A_z, A_z̄]]` and
/// `λ^2 (‖B‖^2/4 - K) P + [[A_z̄, A_z], P]`.
pub fn parallel_residual_31(b: &BundleMap) -> Result<(MatRF, MatRF)> {
    let t = Tensors::new(b)?;
    Ok((t.eq31_first()?, t.eq31_second()?))
}

/// The scalar condition equivalent to a parallel second fundamental form:
/// `λ^2/16 ‖B‖^2 (8K + ‖B‖^2) - 2 tr([A_z, P][A_z̄, P^*]) + 5 tr([A_z, A_z̄][P, P^*])`.
pub fn parallel_residual_32(b: &BundleMap) -> Result<RationalFunction> {
    Tensors::new(b)?.eq32()
}

/// All tensors of a bundle, computed once.
struct Tensors {
    az: MatRF,
    azb: MatRF,
    comm: MatRF,
    l2: RationalFunction,
    k: RationalFunction,
    p: MatRF,
    b2: RationalFunction,
}

impl Tensors {
    fn new(b: &BundleMap) -> Result<Self> {
        let az = a_z(b)?;
        let azb = a_zb(b)?;
        Self::from_pair(az, azb)
    }

    fn from_pair(az: MatRF, azb: MatRF) -> Result<Self> {
        let l2 = lambda2_from(&az, &azb)?;
        let k = curvature_from(&l2)?;
        let p = p_from(&az, &l2)?;
        let b2 = b2_from(&p);
        let comm = az.commutator(&azb)?;
        Ok(Self {
            az,
            azb,
            comm,
            l2,
            k,
            p,
            b2,
        })
    }

    fn harmonic(&self) -> Result<MatRF> {
        self.az.d_zb().sub(&self.comm)
    }

    fn eq31_first(&self) -> Result<MatRF> {
        let c = self.l2.mul(&self.k.scale_rational(&q(2, 1)).add(&self.b2));
        let lhs = self.azb.scale(&c);
        let rhs = self
            .azb
            .commutator(&self.comm)?
            .scale_const(&GaussianRational::from_int(4));
        lhs.add(&rhs)
    }

    fn eq31_second(&self) -> Result<MatRF> {
        let c = self.l2.mul(&self.b2.scale_rational(&q(1, 4)).sub(&self.k));
        // [[A_z̄, A_z], P] = -[[A_z, A_z̄], P]
        self.p.scale(&c).sub(&self.comm.commutator(&self.p)?)
    }

    fn eq32(&self) -> Result<RationalFunction> {
        let pstar = self.p.wadjoint();
        let first = self
            .l2
            .mul(&self.b2)
            .mul(&self.k.scale_rational(&q(8, 1)).add(&self.b2))
            .scale_rational(&q(1, 16));
        if self.p.is_zero() {
            return Ok(first);
        }
        let x = self.az.commutator(&self.p)?;
        let y = self.azb.commutator(&pstar)?;
        let second = x.trace_of_product(&y)?.scale_rational(&q(2, 1));
        let pp = self.p.commutator(&pstar)?;
        let third = self.comm.trace_of_product(&pp)?.scale_rational(&q(5, 1));
        Ok(first.sub(&second).add(&third))
    }
}

/// A scalar invariant with its constancy decided by the formal derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    pub value: RationalFunction,
    pub constant: bool,
}

impl Invariant {
    pub fn new(value: RationalFunction) -> Self {
        let constant = value.d_z().is_zero() && value.d_zb().is_zero();
        Self { value, constant }
    }

    /// The value as a rational number when it is a real constant.
    pub fn rational(&self) -> Option<BigRational> {
        if self.constant {
            self.value.as_rational()
        } else {
            None
        }
    }
}

/// A chart point where a residual is certifiably nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub residual: &'static str,
    /// Entry `(row, column)` for matrix residuals.
    pub entry: Option<(usize, usize)>,
    pub point: GaussianRational,
    pub value: GaussianRational,
}

/// Small rational chart points tried, in order, when looking for a witness.
pub fn witness_candidates() -> Vec<GaussianRational> {
    [
        (1, 2, 0, 1),
        (1, 1, 1, 1),
        (2, 1, -1, 3),
        (-3, 4, 1, 5),
        (1, 3, 2, 1),
        (2, 1, 0, 1),
        (-1, 2, -1, 2),
        (3, 1, 1, 7),
    ]
    .iter()
    .map(|&(a, b, c, d)| GaussianRational::from_ratios(a, b, c, d))
    .collect()
}

/// First candidate point where `r` is defined and nonzero.
pub fn find_witness(r: &RationalFunction) -> Option<(GaussianRational, GaussianRational)> {
    if r.is_zero() {
        return None;
    }
    witness_candidates()
        .into_iter()
        .find_map(|z0| match r.evaluate_at(&z0) {
            Ok(v) if !v.is_zero() => Some((z0, v)),
            _ => None,
        })
}

fn scalar_witness(name: &'static str, r: &RationalFunction) -> Option<Witness> {
    find_witness(r).map(|(point, value)| Witness {
        residual: name,
        entry: None,
        point,
        value,
    })
}

fn matrix_witness(name: &'static str, m: &MatRF) -> Option<Witness> {
    let n = m.dim();
    for j in 0..n {
        for l in 0..n {
            if let Some((point, value)) = find_witness(m.get(j, l)) {
                return Some(Witness {
                    residual: name,
                    entry: Some((j, l)),
                    point,
                    value,
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub isotropy_bound: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { isotropy_bound: 6 }
    }
}

/// Everything the verifier knows about one bundle.
#[derive(Clone, Debug)]
pub struct GeometryReport {
    pub lambda2: RationalFunction,
    pub k: Invariant,
    pub b2: Invariant,
    pub m1: RationalFunction,
    pub m2: RationalFunction,
    pub harmonic_residual_zero: bool,
    pub eq31_first_zero: bool,
    pub eq31_second_zero: bool,
    pub eq32_zero: bool,
    pub eq32_residual: RationalFunction,
    pub l_in: RationalFunction,
    pub l_out: RationalFunction,
    pub kahler: KahlerStatus,
    /// `(rank ∂′φ, rank ∂″φ)` as generic ranks.
    pub ranks: (usize, usize),
    pub isotropy: IsotropyReport,
    pub trace_a_z_zero: bool,
    pub trace_p_zero: bool,
    pub witnesses: Vec<Witness>,
}

impl GeometryReport {
    pub fn all_residuals_zero(&self) -> bool {
        self.harmonic_residual_zero && self.eq31_first_zero && self.eq31_second_zero && self.eq32_zero
    }
}

pub fn geometry_report(b: &BundleMap) -> Result<GeometryReport> {
    geometry_report_with(b, &ReportOptions::default())
}

pub fn geometry_report_with(b: &BundleMap, opts: &ReportOptions) -> Result<GeometryReport> {
    let phi = b.projection();
    let dphi = phi.d_z();
    let dbphi = phi.d_zb();
    let refl = reflection(b)?;
    let t = Tensors::from_pair(refl.mul(&dphi)?, refl.mul(&dbphi)?)?;

    let harmonic = t.harmonic()?;
    let e31a = t.eq31_first()?;
    let e31b = t.eq31_second()?;
    let e32 = t.eq32()?;

    let x = second_fundamental_piece(phi, &dphi)?;
    let y = second_fundamental_piece(phi, &dbphi)?;
    let l_out = x.norm_sq();
    let l_in = y.norm_sq();
    let kahler = kahler_from_l(&l_in, &l_out)?;
    let ranks = (x.generic_rank(), y.generic_rank());
    let isotropy = isotropy_order(b, opts.isotropy_bound)?;

    let mut witnesses = Vec::new();
    witnesses.extend(matrix_witness("harmonic", &harmonic));
    witnesses.extend(matrix_witness("eq31_first", &e31a));
    witnesses.extend(matrix_witness("eq31_second", &e31b));
    witnesses.extend(scalar_witness("eq32", &e32));

    let (m1, m2) = m_constants(&t.k, &t.b2, &t.l2);
    Ok(GeometryReport {
        k: Invariant::new(t.k.clone()),
        b2: Invariant::new(t.b2.clone()),
        m1,
        m2,
        harmonic_residual_zero: harmonic.is_zero(),
        eq31_first_zero: e31a.is_zero(),
        eq31_second_zero: e31b.is_zero(),
        eq32_zero: e32.is_zero(),
        eq32_residual: e32,
        l_in,
        l_out,
        kahler,
        ranks,
        isotropy,
        trace_a_z_zero: t.az.trace().is_zero(),
        trace_p_zero: t.p.trace().is_zero(),
        witnesses,
        lambda2: t.l2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BiPoly;
    use crate::ambient::{VecRF, WeightedSpace};
    use crate::sequences::{bundle_from_sections, veronese};

    fn fs() -> RationalFunction {
        RationalFunction::from_poly(BiPoly::one_plus_zzb())
    }

    fn conic_pair() -> BundleMap {
        bundle_from_sections(&[veronese(2, 0).unwrap(), veronese(2, 1).unwrap()]).unwrap()
    }

    #[test]
    fn conic_pair_metric_and_curvature() {
        let b = conic_pair();
        assert_eq!(
            metric_lambda2(&b).unwrap(),
            RationalFunction::from_int(2).div(&fs().pow(2)).unwrap()
        );
        assert_eq!(gauss_curvature(&b).unwrap().rational(), Some(q(2, 1)));
        assert_eq!(b_norm_sq(&b).unwrap().rational(), Some(q(4, 1)));
    }

    #[test]
    fn skew_pair() {
        let b = conic_pair();
        assert!(a_z(&b).unwrap().wadjoint().add(&a_zb(&b).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn conic_pair_a_z_matches_outer_product() {
        // A_z = -f_2 f_1^* / |f_1|^2 for the Frenet pair f_0 ⊕ f_1.
        let b = conic_pair();
        let f1 = veronese(2, 1).unwrap();
        let f2 = veronese(2, 2).unwrap();
        let n1 = crate::ambient::winner(&f1, &f1).unwrap();
        let expected = crate::ambient::outer(&f2, &f1).unwrap().scale(&n1.inv().unwrap().neg());
        assert_eq!(a_z(&b).unwrap(), expected);
    }

    #[test]
    fn m_constants_for_conic_pair() {
        let l2 = RationalFunction::from_int(2).div(&fs().pow(2)).unwrap();
        let (m1, m2) = m_constants(&RationalFunction::from_int(2), &RationalFunction::from_int(4), &l2);
        assert_eq!(m1, l2.scale_rational(&q(-2, 1)));
        assert_eq!(m2, l2);
        let (m1, m2) = m_constants(&RationalFunction::from_int(2), &RationalFunction::zero(), &l2);
        assert_eq!(m1, l2.neg());
        assert_eq!(m2, l2.scale_rational(&q(2, 1)));
    }

    #[test]
    fn totally_geodesic_line() {
        let b = bundle_from_sections(&[veronese(1, 0).unwrap()]).unwrap();
        assert!(p_tensor(&b).unwrap().is_zero());
        assert_eq!(gauss_curvature(&b).unwrap().rational(), Some(q(4, 1)));
    }

    #[test]
    fn non_harmonic_section() {
        let s = WeightedSpace::standard(2);
        let v = VecRF::new(
            s,
            vec![
                RationalFunction::one(),
                RationalFunction::z().add(&RationalFunction::zb()),
            ],
        )
        .unwrap();
        let b = bundle_from_sections(&[v]).unwrap();
        assert!(!harmonic_residual(&b).unwrap().is_zero());
    }

    #[test]
    fn constant_bundle() {
        let s = WeightedSpace::standard(3);
        let b = bundle_from_sections(&[VecRF::basis(s.clone(), 0).unwrap(), VecRF::basis(s, 2).unwrap()]).unwrap();
        assert!(a_z(&b).unwrap().is_zero());
        assert!(metric_lambda2(&b).unwrap().is_zero());
        assert!(harmonic_residual(&b).unwrap().is_zero());
        assert!(matches!(gauss_curvature(&b), Err(Error::DegenerateMetric)));
        assert!(matches!(geometry_report(&b), Err(Error::DegenerateMetric)));
    }

    #[test]
    fn conic_pair_report() {
        let r = geometry_report(&conic_pair()).unwrap();
        assert!(r.all_residuals_zero());
        assert!(r.witnesses.is_empty());
        assert_eq!(r.ranks, (1, 0));
        assert!(r.trace_a_z_zero && r.trace_p_zero);
        assert_eq!(r.lambda2, r.l_in.add(&r.l_out));
    }
}
