//! Shared inputs for the benchmarks in `benches/`.

use grassmin_core::algebra::{BiPoly, GaussianRational, RationalFunction};

fn c(p: i64, q: i64, r: i64, s: i64) -> GaussianRational {
    GaussianRational::from_ratios(p, q, r, s)
}

/// `(1 + z zb)^k`.
pub fn fubini_study_power(k: u32) -> BiPoly {
    BiPoly::one_plus_zzb().pow(k)
}

/// A pair of polynomials with a known bivariate common factor of total degree 4.
pub fn gcd_pair() -> (BiPoly, BiPoly, BiPoly) {
    let g = BiPoly::from_terms(vec![
        ((2, 2), c(1, 1, 0, 1)),
        ((1, 0), c(3, 2, 1, 1)),
        ((0, 1), c(0, 1, -2, 1)),
        ((0, 0), c(1, 1, 0, 1)),
    ]);
    let a = BiPoly::from_terms(vec![
        ((3, 1), c(2, 1, 0, 1)),
        ((0, 2), c(-1, 3, 0, 1)),
        ((1, 1), c(0, 1, 1, 1)),
        ((0, 0), c(5, 1, 0, 1)),
    ]);
    let b = BiPoly::from_terms(vec![
        ((1, 3), c(1, 1, 1, 1)),
        ((2, 0), c(4, 1, 0, 1)),
        ((0, 0), c(-7, 2, 0, 1)),
    ]);
    (a.mul(&g), b.mul(&g), g)
}

/// A rational function shaped like a projection entry: polynomial over a Fubini-Study power.
pub fn projection_entry(k: u32) -> RationalFunction {
    let num = BiPoly::from_terms(vec![
        ((k, 0), c(1, 1, 0, 1)),
        ((1, k.saturating_sub(1)), c(-3, 1, 1, 2)),
        ((0, 0), c(2, 1, 0, 1)),
    ]);
    RationalFunction::new(num, fubini_study_power(k)).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use grassmin_core::algebra::poly_gcd;

    #[test]
    fn gcd_pair_recovers_its_factor() {
        let (p, q, g) = gcd_pair();
        assert_eq!(poly_gcd(&p, &q), g.monic());
    }

    #[test]
    fn projection_entry_is_reduced() {
        assert_eq!(projection_entry(3).den(), &fubini_study_power(3));
    }
}
