use std::fs;
use std::path::Path;

use serde_json::Value;

use grassmin_core::algebra::{rational_to_string, GaussianRational};
use grassmin_core::catalog::{all_cases, build_case, find_case, isometries, verify_case};
use grassmin_core::invariants::{a_z, a_zb, geometry_report, p_tensor, ReportOptions};
use grassmin_core::pointwise::invariants_at;
use grassmin_core::Error;

const LIGHT: [&str; 6] = ["T1.1-1", "T1.1-2", "T1.1-3", "T1.1-4", "T1.2-2", "T1.2-3"];

fn golden() -> Vec<Value> {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/expected_table.json");
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn opt_rat(v: &Option<num_rational::BigRational>) -> Value {
    v.as_ref().map_or(Value::Null, |r| Value::String(rational_to_string(r)))
}

#[test]
fn golden_file_agrees_with_builtin_table() {
    let g = golden();
    let cases = all_cases();
    assert_eq!(g.len(), cases.len());
    for (rec, c) in g.iter().zip(&cases) {
        assert_eq!(rec["id"], c.id);
        assert_eq!(rec["N"], c.n, "{}", c.id);
        assert_eq!(rec["K"], opt_rat(&c.expected_k), "{}", c.id);
        assert_eq!(rec["B2"], opt_rat(&c.expected_b2), "{}", c.id);
        match c.expected_ranks {
            Some((d1, d2)) => {
                assert_eq!(rec["ranks"]["dprime"], d1, "{}", c.id);
                assert_eq!(rec["ranks"]["dsecond"], d2, "{}", c.id);
            }
            None => assert!(rec["ranks"].is_null()),
        }
        let f = &rec["flags"];
        assert_eq!(f["harmonic"], c.expected_harmonic, "{}", c.id);
        assert_eq!(f["eq31"], c.expected_eq31.map_or(Value::Null, Value::Bool), "{}", c.id);
        assert_eq!(f["eq32"], c.expected_eq32, "{}", c.id);
        assert_eq!(
            f["kahler"],
            c.expected_kahler.map_or(Value::Null, |k| k.as_str().into()),
            "{}",
            c.id
        );
        assert_eq!(
            rec["isotropy"],
            c.expected_isotropy.map_or(Value::Null, |i| i.label().into()),
            "{}",
            c.id
        );
        assert_eq!(rec["takes_theta"], c.takes_theta, "{}", c.id);
        assert_eq!(rec["citation"], c.citation, "{}", c.id);
    }
}

#[test]
fn ids_are_unique_and_resolvable() {
    let cases = all_cases();
    for c in &cases {
        assert_eq!(cases.iter().filter(|d| d.id == c.id).count(), 1);
        assert_eq!(find_case(c.id).unwrap().id, c.id);
    }
    assert!(matches!(find_case("T9.9-9"), Err(Error::UnknownCase(_))));
}

#[test]
fn theta_is_rejected_where_it_does_not_apply() {
    let t = GaussianRational::from_ratios(3, 5, 4, 5);
    assert!(matches!(
        build_case("T1.1-1", Some(&t)),
        Err(Error::ThetaNotApplicable(_))
    ));
    let bad = GaussianRational::from_ratios(1, 2, 0, 1);
    assert!(matches!(build_case("T1.3-3", Some(&bad)), Err(Error::NonUnitTheta(_))));
}

#[test]
fn tensor_identities_on_light_cases() {
    for id in LIGHT {
        let b = build_case(id, None).unwrap();
        let az = a_z(&b).unwrap();
        let azb = a_zb(&b).unwrap();
        assert!(az.wadjoint().add(&azb).unwrap().is_zero(), "{id}");
        assert!(az.trace().is_zero(), "{id}");
        assert!(p_tensor(&b).unwrap().trace().is_zero(), "{id}");
    }
}

#[test]
fn pointwise_values_agree_with_symbolic_constants() {
    let pts = [
        GaussianRational::from_ratios(1, 2, 0, 1),
        GaussianRational::from_ratios(-2, 1, 1, 3),
        GaussianRational::from_ratios(0, 1, 5, 7),
    ];
    for id in LIGHT {
        let c = find_case(id).unwrap();
        let b = build_case(id, None).unwrap();
        for z0 in &pts {
            let v = invariants_at(&b, z0).unwrap();
            assert_eq!(
                v.k,
                GaussianRational::from_real(c.expected_k.clone().unwrap()),
                "{id} at {z0}"
            );
            assert_eq!(
                v.b2,
                GaussianRational::from_real(c.expected_b2.clone().unwrap()),
                "{id} at {z0}"
            );
        }
    }
}

#[test]
fn invariants_survive_weighted_isometries() {
    for id in ["T1.1-1", "T1.1-3", "T1.2-3"] {
        let b = build_case(id, None).unwrap();
        let base = geometry_report(&b).unwrap();
        let isos = isometries(b.space());
        assert!(!isos.is_empty());
        for (name, u) in isos {
            let moved = b.transformed(&u).unwrap();
            let rep = geometry_report(&moved).unwrap();
            assert_eq!(rep.k, base.k, "{id} {name}");
            assert_eq!(rep.b2, base.b2, "{id} {name}");
            assert_eq!(rep.lambda2, base.lambda2, "{id} {name}");
            assert_eq!(rep.ranks, base.ranks, "{id} {name}");
            assert_eq!(rep.all_residuals_zero(), base.all_residuals_zero(), "{id} {name}");
        }
    }
}

#[test]
fn light_cases_verify() {
    for id in LIGHT {
        let out = verify_case(&find_case(id).unwrap(), &ReportOptions::default());
        assert!(out.pass, "{id}: {:?}", out.mismatches);
    }
}
