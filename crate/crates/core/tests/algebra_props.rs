//! Randomized identities of the scalar kernel.

use grassmin_core::algebra::{poly_gcd, BiPoly, GaussianRational, RationalFunction};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(p, q, r, s)| GaussianRational::from_ratios(p, q, r, s))
}

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), coeff()), 0..=max_terms).prop_map(BiPoly::from_terms)
}

fn nonzero_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    poly(max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn rf() -> impl Strategy<Value = RationalFunction> {
    (poly(2, 3), nonzero_poly(2, 3)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn point() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4).prop_map(|(p, q, r, s)| GaussianRational::from_ratios(p, q, r, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn leibniz_rule(r in rf(), s in rf()) {
        let lhs = r.mul(&s).d_z();
        let rhs = r.d_z().mul(&s).add(&r.mul(&s.d_z()));
        prop_assert_eq!(lhs, rhs);
        let lhs = r.mul(&s).d_zb();
        let rhs = r.d_zb().mul(&s).add(&r.mul(&s.d_zb()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn printed_scalars_parse_back(c in point()) {
        prop_assert_eq!(c.to_string().parse::<GaussianRational>().unwrap(), c);
    }

    #[test]
    fn derivatives_commute(r in rf()) {
        prop_assert_eq!(r.d_z().d_zb(), r.d_zb().d_z());
    }

    #[test]
    fn conjugation_swaps_derivatives(r in rf()) {
        prop_assert_eq!(r.d_z().conj(), r.conj().d_zb());
    }

    #[test]
    fn canonical_form_is_a_congruence(a in rf(), b in rf()) {
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&b).sub(&b.mul(&a)), RationalFunction::zero());
    }

    #[test]
    fn gcd_of_common_multiples(p in nonzero_poly(2, 3), q in nonzero_poly(2, 3), g in nonzero_poly(2, 3)) {
        let base = poly_gcd(&p, &q);
        prop_assume!(base.is_one());
        let got = poly_gcd(&p.mul(&g), &q.mul(&g));
        // Associates agree after graded-lex normalization.
        prop_assert_eq!(got, g.monic());
    }

    #[test]
    fn gcd_divides_both(p in nonzero_poly(3, 4), q in nonzero_poly(3, 4)) {
        let g = poly_gcd(&p, &q);
        prop_assert!(p.div_exact(&g).is_some());
        prop_assert!(q.div_exact(&g).is_some());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(r in rf(), s in rf(), z0 in point()) {
        let (Ok(a), Ok(b)) = (r.evaluate_at(&z0), s.evaluate_at(&z0)) else {
            return Ok(());
        };
        prop_assert_eq!(r.mul(&s).evaluate_at(&z0).unwrap(), &a * &b);
        prop_assert_eq!(r.add(&s).evaluate_at(&z0).unwrap(), &a + &b);
    }
}
