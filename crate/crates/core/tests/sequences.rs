use num_rational::BigRational;

use grassmin_core::algebra::RationalFunction;
use grassmin_core::ambient::winner;
use grassmin_core::invariants::gauss_curvature;
use grassmin_core::sequences::{
    bundle_from_sections, dprime_transform, dsecond_transform, isotropy_order, next_section, veronese, veronese_norm,
    IsotropyOrder, SectionChain,
};

#[test]
fn veronese_norms_match_closed_form() {
    for n in 0..=6 {
        for i in 0..=n {
            let f = veronese(n, i).unwrap();
            assert_eq!(winner(&f, &f).unwrap(), veronese_norm(n, i), "n={n} i={i}");
        }
    }
}

#[test]
fn chain_sections_are_mutually_orthogonal() {
    for n in 1..=5 {
        let chain = SectionChain::veronese(n).unwrap();
        assert_eq!(chain.len(), n as usize + 1);
        for a in 0..chain.len() {
            for b in a + 1..chain.len() {
                assert!(
                    winner(&chain.sections[a], &chain.sections[b]).unwrap().is_zero(),
                    "n={n} ({a},{b})"
                );
            }
        }
        for r in chain.backward_residuals().unwrap() {
            assert!(r.is_zero());
        }
    }
}

#[test]
fn rank_one_curvature_is_four_over_the_energy_weight() {
    for n in 1..=5i64 {
        for i in 0..=n {
            let b = bundle_from_sections(&[veronese(n, i).unwrap()]).unwrap();
            let k = gauss_curvature(&b).unwrap();
            let want = BigRational::new(4.into(), (n + 2 * i * (n - i)).into());
            assert_eq!(k.rational(), Some(want), "n={n} i={i}");
        }
    }
}

#[test]
fn forward_recursion_reaches_the_last_line() {
    for n in 1..=4i64 {
        for i in 0..=n {
            let mut f = veronese(n, i).unwrap();
            for _ in i..n {
                f = next_section(&f).unwrap();
            }
            let got = bundle_from_sections(&[f]).unwrap();
            let last = bundle_from_sections(&[veronese(n, n).unwrap()]).unwrap();
            assert_eq!(got.projection(), last.projection(), "n={n} i={i}");
        }
    }
}

#[test]
fn transforms_invert_each_other_at_interior_nodes() {
    for n in 2..=4i64 {
        for i in 0..n {
            let b = bundle_from_sections(&[veronese(n, i).unwrap()]).unwrap();
            let fwd = dprime_transform(&b).unwrap();
            assert_eq!(fwd.rank(), 1);
            let back = dsecond_transform(&fwd).unwrap();
            assert_eq!(back.projection(), b.projection(), "n={n} i={i}");
        }
    }
}

#[test]
fn harmonic_sequence_is_orthogonal_to_its_predecessor() {
    let pairs = [
        vec![veronese(2, 0).unwrap(), veronese(2, 1).unwrap()],
        vec![veronese(3, 1).unwrap(), veronese(3, 2).unwrap()],
        vec![veronese(4, 0).unwrap(), veronese(4, 2).unwrap()],
    ];
    for secs in pairs {
        let b = bundle_from_sections(&secs).unwrap();
        let next = dprime_transform(&b).unwrap();
        let t = b.projection().trace_of_product(next.projection()).unwrap();
        assert_eq!(t, RationalFunction::zero());
    }
}

#[test]
fn veronese_lines_terminate_orthogonally() {
    for n in 1..=4i64 {
        for i in 0..=n {
            let b = bundle_from_sections(&[veronese(n, i).unwrap()]).unwrap();
            let rep = isotropy_order(&b, 6).unwrap();
            assert_eq!(rep.order, IsotropyOrder::Infinite, "n={n} i={i}");
            assert_eq!(rep.ranks.len() as i64, n - i + 1);
        }
    }
}
