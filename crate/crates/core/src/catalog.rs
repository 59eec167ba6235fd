//! The eighteen classified immersions with constant curvature and parallel
//! second fundamental form, one negative control, and the verification harness.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{rational_to_string, GaussianRational};
use crate::ambient::{VecRF, WeightedSpace};
use crate::error::{Error, Result};
use crate::invariants::{geometry_report_with, GeometryReport, ReportOptions};
use crate::sequences::{
    bundle_from_sections, concat, const_coord, const_vector, pad_end, pad_front, veronese, BundleMap, IsotropyOrder,
    KahlerFlag,
};

/// A section constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Veronese(i64, i64),
    PadEnd(Box<Recipe>, usize),
    PadFront(Box<Recipe>, usize),
    Concat(Box<Recipe>, Box<Recipe>),
    /// A one-coordinate constant vector of the given weight whose value is the phase point.
    Phase(i64),
    /// The last coordinate vector `(0, ..., 0, 1)` of `C^N` with unit weights.
    LastCoord(usize),
}

impl Recipe {
    pub fn build(&self, theta: &GaussianRational) -> Result<VecRF> {
        Ok(match self {
            Recipe::Veronese(n, i) => veronese(*n, *i)?,
            Recipe::PadEnd(r, k) => pad_end(&r.build(theta)?, *k),
            Recipe::PadFront(r, k) => pad_front(&r.build(theta)?, *k),
            Recipe::Concat(a, b) => concat(&a.build(theta)?, &b.build(theta)?),
            Recipe::Phase(w) => const_vector(BigRational::from_integer((*w).into()), theta.clone())?,
            Recipe::LastCoord(n) => const_coord(&WeightedSpace::standard(*n), n - 1)?,
        })
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Veronese(n, i) => write!(f, "veronese({n},{i})"),
            Recipe::PadEnd(r, k) => write!(f, "pad_end({r},{k})"),
            Recipe::PadFront(r, k) => write!(f, "pad_front({r},{k})"),
            Recipe::Concat(a, b) => write!(f, "concat({a},{b})"),
            Recipe::Phase(w) => write!(f, "const(w={w}, value=theta)"),
            Recipe::LastCoord(n) => write!(f, "c0({n})"),
        }
    }
}

fn v(n: i64, i: i64) -> Recipe {
    Recipe::Veronese(n, i)
}

fn pe(r: Recipe, k: usize) -> Recipe {
    Recipe::PadEnd(Box::new(r), k)
}

fn pf(r: Recipe, k: usize) -> Recipe {
    Recipe::PadFront(Box::new(r), k)
}

/// One classified immersion (or negative control) with its expected invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCase {
    pub id: &'static str,
    pub n: usize,
    pub sections: Vec<Recipe>,
    /// `None` when the value is recorded but not asserted.
    pub expected_k: Option<BigRational>,
    pub expected_b2: Option<BigRational>,
    pub expected_ranks: Option<(usize, usize)>,
    pub expected_kahler: Option<KahlerFlag>,
    pub expected_isotropy: Option<IsotropyOrder>,
    pub expected_harmonic: bool,
    /// Expected zero-ness of both matrix conditions; `None` when not asserted.
    pub expected_eq31: Option<bool>,
    pub expected_eq32: bool,
    pub takes_theta: bool,
    pub citation: &'static str,
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[allow(clippy::too_many_arguments)]
fn positive(
    id: &'static str,
    n: usize,
    sections: Vec<Recipe>,
    k: BigRational,
    b2: BigRational,
    ranks: (usize, usize),
    kahler: Option<KahlerFlag>,
    isotropy: Option<IsotropyOrder>,
    citation: &'static str,
) -> CatalogCase {
    CatalogCase {
        id,
        n,
        sections,
        expected_k: Some(k),
        expected_b2: Some(b2),
        expected_ranks: Some(ranks),
        expected_kahler: kahler,
        expected_isotropy: isotropy,
        expected_harmonic: true,
        expected_eq31: Some(true),
        expected_eq32: true,
        takes_theta: false,
        citation,
    }
}

/// The eighteen classified cases.
pub fn expected_table() -> Vec<CatalogCase> {
    use IsotropyOrder::{AtLeast, Finite, Infinite};
    use KahlerFlag::{Holomorphic, TotallyReal};
    let hol = Some(Holomorphic);
    let tr = Some(TotallyReal);
    vec![
        positive(
            "T1.1-1",
            3,
            vec![v(2, 0), v(2, 1)],
            r(2, 1),
            r(4, 1),
            (1, 0),
            hol,
            Some(Infinite),
            "Theorem 1.1(1): V0(2) + V1(2), \"with K=2 and ‖B‖²=4\"",
        ),
        positive(
            "T1.1-2",
            3,
            vec![pe(v(1, 0), 1), Recipe::LastCoord(3)],
            r(4, 1),
            r(0, 1),
            (1, 0),
            hol,
            Some(Infinite),
            "Theorem 1.1(2): V0(1) + c0, \"with K=4 and ‖B‖²=0\"",
        ),
        positive(
            "T1.1-3",
            4,
            vec![pe(v(2, 0), 1), Recipe::LastCoord(4)],
            r(2, 1),
            r(4, 1),
            (1, 0),
            hol,
            Some(Infinite),
            "Theorem 1.1(3): V0(2) + c0, \"with K=2 and ‖B‖²=4\"",
        ),
        positive(
            "T1.1-4",
            4,
            vec![pf(v(1, 0), 2), pe(v(1, 0), 2)],
            r(2, 1),
            r(0, 1),
            (2, 0),
            hol,
            Some(Infinite),
            "Theorem 1.1(4): V̂0(1) + V0(1), \"with K=2 and ‖B‖²=0\"",
        ),
        positive(
            "T1.1-5",
            6,
            vec![pf(v(2, 0), 3), pe(v(2, 0), 3)],
            r(1, 1),
            r(2, 1),
            (2, 0),
            hol,
            Some(Infinite),
            "Theorem 1.1(5): V̂0(2) + V0(2), \"with K=1 and ‖B‖²=2\"",
        ),
        positive(
            "T1.2-1",
            4,
            vec![v(3, 1), v(3, 2)],
            r(2, 3),
            r(8, 3),
            (1, 1),
            None,
            None,
            "Theorem 1.2(1): V1(3) + V2(3), \"K=2/3 and ‖B‖²=8/3\"",
        ),
        positive(
            "T1.2-2",
            3,
            vec![v(2, 0), v(2, 2)],
            r(1, 1),
            r(0, 1),
            (1, 1),
            None,
            None,
            "Theorem 1.2(2): V0(2) + V2(2), \"K=1 and ‖B‖²=0\"",
        ),
        positive(
            "T1.2-3",
            4,
            vec![pf(v(1, 0), 2), pe(v(1, 1), 2)],
            r(2, 1),
            r(0, 1),
            (1, 1),
            None,
            None,
            "Theorem 1.2(3): V̂0(1) + V1(1), \"K=2 and ‖B‖²=0\"",
        ),
        positive(
            "T1.2-4",
            4,
            vec![v(3, 0), v(3, 3)],
            r(2, 3),
            r(8, 3),
            (1, 1),
            None,
            None,
            "Theorem 1.2(4): V0(3) + V3(3), \"K=2/3 and ‖B‖²=8/3\"",
        ),
        positive(
            "T1.2-5",
            6,
            vec![pf(v(2, 0), 3), pe(v(2, 2), 3)],
            r(1, 1),
            r(2, 1),
            (1, 1),
            None,
            None,
            "Theorem 1.2(5): V̂0(2) + V2(2), \"with K=1 and ‖B‖²=2\"",
        ),
        positive(
            "T1.2-6",
            4,
            vec![pe(v(2, 1), 1), Recipe::LastCoord(4)],
            r(1, 1),
            r(0, 1),
            (1, 1),
            None,
            None,
            "Theorem 1.2(6): V1(2) + c0, \"K=1 and ‖B‖²=0\"",
        ),
        positive(
            "T1.2-7",
            6,
            vec![pe(v(4, 2), 1), Recipe::LastCoord(6)],
            r(1, 3),
            r(4, 3),
            (1, 1),
            None,
            None,
            "Theorem 1.2(7): V2(4) + c0, \"with K=1/3 and ‖B‖²=4/3\"",
        ),
        positive(
            "T1.3-1",
            4,
            vec![v(3, 1), v(3, 3)],
            r(2, 5),
            r(0, 1),
            (1, 2),
            None,
            None,
            "Theorem 1.3(1): V1(3) + V3(3), \"K=2/5 and ‖B‖²=0\"",
        ),
        positive(
            "T1.3-2",
            5,
            vec![pf(v(1, 1), 3), pe(v(2, 1), 2)],
            r(4, 5),
            r(0, 1),
            (1, 2),
            None,
            None,
            "Theorem 1.3(2): V̂1(1) + V1(2), \"K=4/5 and ‖B‖²=0\"",
        ),
        CatalogCase {
            takes_theta: true,
            ..positive(
                "T1.3-3",
                6,
                vec![
                    pe(v(4, 3), 1),
                    Recipe::Concat(Box::new(v(4, 2)), Box::new(Recipe::Phase(48))),
                ],
                r(2, 5),
                r(4, 5),
                (1, 2),
                None,
                None,
                "Theorem 1.3(3): V3(4) + α, α = (V2(4), √48 e^{iθ}), \"K=2/5, ‖B‖²=4/5\"",
            )
        },
        positive(
            "T1.4-1",
            5,
            vec![v(4, 1), v(4, 3)],
            r(1, 5),
            r(0, 1),
            (2, 2),
            tr,
            Some(Finite(1)),
            "Theorem 1.4(1): V1(4) + V3(4), \"K=1/5 and ‖B‖²=0\"",
        ),
        positive(
            "T1.4-2",
            6,
            vec![pf(v(2, 1), 3), pe(v(2, 1), 3)],
            r(1, 2),
            r(0, 1),
            (2, 2),
            tr,
            Some(AtLeast(2)),
            "Theorem 1.4(2): V̂1(2) + V1(2), \"K=1/2 and ‖B‖²=0\"",
        ),
        positive(
            "T1.4-3",
            10,
            vec![pf(v(4, 2), 5), pe(v(4, 2), 5)],
            r(1, 6),
            r(2, 3),
            (2, 2),
            tr,
            Some(AtLeast(2)),
            "Theorem 1.4(3): V̂2(4) + V2(4), \"with K=1/6 and ‖B‖²=2/3\"",
        ),
    ]
}

/// The negative control: harmonic, but without parallel second fundamental form.
pub fn negative_cases() -> Vec<CatalogCase> {
    vec![CatalogCase {
        id: "NEG-1",
        n: 7,
        sections: vec![v(6, 3), v(6, 6)],
        expected_k: None,
        expected_b2: None,
        expected_ranks: None,
        expected_kahler: None,
        expected_isotropy: None,
        expected_harmonic: true,
        expected_eq31: None,
        expected_eq32: false,
        takes_theta: false,
        citation: "Negative example: V3(6) + V6(6) in G(2,7) \"does not have parallel second fundamental form\"",
    }]
}

/// All nineteen cases, positives first.
pub fn all_cases() -> Vec<CatalogCase> {
    let mut v = expected_table();
    v.extend(negative_cases());
    v
}

pub fn find_case(id: &str) -> Result<CatalogCase> {
    all_cases()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// The nontrivial phase point used alongside `θ = 0`.
pub fn alternate_theta() -> GaussianRational {
    GaussianRational::from_ratios(3, 5, 4, 5)
}

fn check_theta(c: &CatalogCase, theta: Option<&GaussianRational>) -> Result<GaussianRational> {
    match theta {
        None => Ok(GaussianRational::one()),
        Some(_) if !c.takes_theta => Err(Error::ThetaNotApplicable(c.id.to_string())),
        Some(t) if !t.norm_sq().is_one() => Err(Error::NonUnitTheta(t.to_string())),
        Some(t) => Ok(t.clone()),
    }
}

/// The sections of a case before weight unification and normalization.
pub fn case_sections(c: &CatalogCase, theta: Option<&GaussianRational>) -> Result<Vec<VecRF>> {
    let t = check_theta(c, theta)?;
    let vs: Vec<VecRF> = c.sections.iter().map(|r| r.build(&t)).collect::<Result<_>>()?;
    if let Some(bad) = vs.iter().find(|v| v.dim() != c.n) {
        return Err(Error::DimensionMismatch {
            expected: c.n,
            found: bad.dim(),
        });
    }
    Ok(vs)
}

pub fn build_bundle(c: &CatalogCase, theta: Option<&GaussianRational>) -> Result<BundleMap> {
    bundle_from_sections(&case_sections(c, theta)?)
}

/// Builds a case by id; `theta` defaults to 1 and is accepted only by `T1.3-3`.
pub fn build_case(id: &str, theta: Option<&GaussianRational>) -> Result<BundleMap> {
    build_bundle(&find_case(id)?, theta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug)]
pub struct VerificationOutcome {
    pub id: String,
    pub pass: bool,
    /// `None` when the build or the report failed.
    pub report: Option<GeometryReport>,
    pub mismatches: Vec<Mismatch>,
    pub space: Option<WeightedSpace>,
}

fn show_opt_rational(x: Option<BigRational>) -> String {
    x.map_or_else(|| "non-constant".to_string(), |r| rational_to_string(&r))
}

/// Field-by-field comparison of a report against a case's expectations.
pub fn diff_report(c: &CatalogCase, rep: &GeometryReport, prefix: &str) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut push = |field: &str, expected: String, actual: String| {
        if expected != actual {
            out.push(Mismatch {
                field: format!("{prefix}{field}"),
                expected,
                actual,
            });
        }
    };
    if let Some(k) = &c.expected_k {
        push("K", rational_to_string(k), show_opt_rational(rep.k.rational()));
    }
    if let Some(b2) = &c.expected_b2 {
        push("B2", rational_to_string(b2), show_opt_rational(rep.b2.rational()));
    }
    if let Some((dp, ds)) = c.expected_ranks {
        push("ranks.dprime", dp.to_string(), rep.ranks.0.to_string());
        push("ranks.dsecond", ds.to_string(), rep.ranks.1.to_string());
    }
    push(
        "flags.harmonic",
        c.expected_harmonic.to_string(),
        rep.harmonic_residual_zero.to_string(),
    );
    if let Some(e31) = c.expected_eq31 {
        push(
            "flags.eq31",
            e31.to_string(),
            (rep.eq31_first_zero && rep.eq31_second_zero).to_string(),
        );
    }
    push("flags.eq32", c.expected_eq32.to_string(), rep.eq32_zero.to_string());
    if let Some(kf) = c.expected_kahler {
        push(
            "flags.kahler",
            kf.as_str().to_string(),
            rep.kahler.flag.as_str().to_string(),
        );
    }
    if let Some(iso) = c.expected_isotropy {
        if !rep.isotropy.order.satisfies(iso) {
            push("isotropy", iso.label(), rep.isotropy.order.label());
        }
    }
    out
}

fn mismatch_from_error(field: &str, e: &Error) -> Mismatch {
    Mismatch {
        field: field.to_string(),
        expected: "success".to_string(),
        actual: e.to_string(),
    }
}

/// Builds the case, computes its report and diffs it against the expectations.
///
/// The phase-parameter case is run at `θ = 0` and at the alternate phase
/// point; the second run must agree with the expectations too. Builder or
/// report failures become failed outcomes.
pub fn verify_case(c: &CatalogCase, opts: &ReportOptions) -> VerificationOutcome {
    let run = |theta: Option<&GaussianRational>| -> Result<(BundleMap, GeometryReport)> {
        let b = build_bundle(c, theta)?;
        let rep = geometry_report_with(&b, opts)?;
        Ok((b, rep))
    };
    let (space, report, mut mismatches) = match run(None) {
        Ok((b, rep)) => {
            let m = diff_report(c, &rep, "");
            (Some(b.space().clone()), Some(rep), m)
        }
        Err(e) => (None, None, vec![mismatch_from_error("build", &e)]),
    };
    if c.takes_theta {
        let t = alternate_theta();
        let prefix = format!("theta={t}:");
        match run(Some(&t)) {
            Ok((_, rep)) => {
                mismatches.extend(diff_report(c, &rep, &prefix));
                if let Some(base) = &report {
                    if base.lambda2 != rep.lambda2 {
                        mismatches.push(Mismatch {
                            field: format!("{prefix}lambda2"),
                            expected: base.lambda2.to_string(),
                            actual: rep.lambda2.to_string(),
                        });
                    }
                }
            }
            Err(e) => mismatches.push(mismatch_from_error(&format!("{prefix}build"), &e)),
        }
    }
    VerificationOutcome {
        id: c.id.to_string(),
        pass: mismatches.is_empty(),
        report,
        mismatches,
        space,
    }
}

/// Weighted isometries of `space` with Gaussian-rational entries: a swap of
/// two equal-weight coordinates, the phase `(3+4i)/5` on the first
/// coordinate, and the rotation `(3/5, 4/5; -4/5, 3/5)` on an equal-weight pair.
pub fn isometries(space: &WeightedSpace) -> Vec<(String, Vec<Vec<GaussianRational>>)> {
    let n = space.dim();
    let id = || -> Vec<Vec<GaussianRational>> {
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|l| {
                        if j == l {
                            GaussianRational::one()
                        } else {
                            GaussianRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let mut out = Vec::new();
    let mut phase = id();
    phase[0][0] = alternate_theta();
    out.push(("phase(3/5+4/5i)@0".to_string(), phase));
    let pair = (0..n).find_map(|j| {
        ((j + 1)..n)
            .find(|&l| space.weight(j) == space.weight(l))
            .map(|l| (j, l))
    });
    if let Some((j, l)) = pair {
        let mut swap = id();
        swap[j][j] = GaussianRational::zero();
        swap[l][l] = GaussianRational::zero();
        swap[j][l] = GaussianRational::one();
        swap[l][j] = GaussianRational::one();
        out.push((format!("swap({j},{l})"), swap));
        let mut rot = id();
        let (c, s) = (
            GaussianRational::from_ratios(3, 5, 0, 1),
            GaussianRational::from_ratios(4, 5, 0, 1),
        );
        rot[j][j] = c.clone();
        rot[j][l] = s.clone();
        rot[l][j] = -s;
        rot[l][l] = c;
        out.push((format!("rotation({j},{l})"), rot));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalFunction;

    #[test]
    fn table_shape() {
        let t = expected_table();
        assert_eq!(t.len(), 18);
        let row = t.iter().find(|c| c.id == "T1.2-7").unwrap();
        assert_eq!(
            (row.n, row.expected_k.clone(), row.expected_b2.clone()),
            (6, Some(r(1, 3)), Some(r(4, 3)))
        );
        let row = t.iter().find(|c| c.id == "T1.3-3").unwrap();
        assert!(row.takes_theta);
        assert_eq!(row.expected_b2, Some(r(4, 5)));
    }

    #[test]
    fn builders_have_declared_dimension() {
        for c in all_cases() {
            for v in case_sections(&c, None).unwrap() {
                assert_eq!(v.dim(), c.n, "{}", c.id);
            }
        }
    }

    #[test]
    fn padded_line_pair() {
        let b = build_case("T1.1-4", None).unwrap();
        let z = RationalFunction::z();
        let (o, e) = (RationalFunction::one(), RationalFunction::zero());
        assert_eq!(
            b.sections()[0].components(),
            &[e.clone(), e.clone(), o.clone(), z.clone()]
        );
        assert_eq!(b.sections()[1].components(), &[o, z, e.clone(), e]);
        assert_eq!(b.space(), &WeightedSpace::standard(4));
    }

    #[test]
    fn phase_case_weights() {
        let b = build_case("T1.3-3", None).unwrap();
        assert_eq!(b.space(), &WeightedSpace::from_ints(&[1, 4, 6, 4, 1, 48]).unwrap());
    }

    #[test]
    fn theta_errors() {
        let half = GaussianRational::from_ratios(1, 2, 0, 1);
        assert!(matches!(build_case("T1.3-3", Some(&half)), Err(Error::NonUnitTheta(_))));
        assert!(matches!(
            build_case("T1.1-1", Some(&alternate_theta())),
            Err(Error::ThetaNotApplicable(_))
        ));
        assert!(matches!(build_case("T9.9-9", None), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn corrupted_expectation_fails_with_one_mismatch() {
        let mut c = find_case("T1.1-1").unwrap();
        c.expected_k = Some(r(3, 1));
        let out = verify_case(&c, &ReportOptions::default());
        assert!(!out.pass);
        assert_eq!(out.mismatches.len(), 1);
        assert_eq!(out.mismatches[0].field, "K");
        assert_eq!(out.mismatches[0].actual, "2");
    }

    #[test]
    fn builder_failure_is_a_failed_outcome() {
        let mut c = find_case("T1.1-1").unwrap();
        c.sections = vec![v(2, 0), v(2, 0)];
        let out = verify_case(&c, &ReportOptions::default());
        assert!(!out.pass);
        assert!(out.report.is_none());
        assert_eq!(out.mismatches[0].field, "build");
    }

    #[test]
    fn isometries_preserve_the_form() {
        let s = WeightedSpace::from_ints(&[1, 2, 1]).unwrap();
        for (name, t) in isometries(&s) {
            // T^† T = I in the weighted sense: sum_j conj(T_jl) T_jm w_j = w_l δ_lm.
            for l in 0..3 {
                for m in 0..3 {
                    let mut acc = GaussianRational::zero();
                    for j in 0..3 {
                        acc += &(&(&t[j][l].conj() * &t[j][m]) * &GaussianRational::from_real(s.weight(j).clone()));
                    }
                    let expected = if l == m {
                        GaussianRational::from_real(s.weight(l).clone())
                    } else {
                        GaussianRational::zero()
                    };
                    assert_eq!(acc, expected, "{name}");
                }
            }
        }
    }
}
