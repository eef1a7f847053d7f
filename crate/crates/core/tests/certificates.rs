use std::time::{Duration, Instant};
use wzpi::algebra::{int, rat, Poly2, RatFunc2};
use wzpi::catalog::{builtin_names, load_builtin};
use wzpi::gosper::{h_ratio, synthesize_certificate, GosperStatus};
use wzpi::wz::{
    g_value, telescoping_probe, verify_certificate, verify_with_certificate, wz_residual, Kind,
    WZIdentity,
};

fn wz(name: &str) -> WZIdentity {
    load_builtin(name).unwrap()
}

fn synthesized(name: &str) -> RatFunc2 {
    let r = synthesize_certificate(&wz(name)).unwrap();
    assert_eq!(r.status, GosperStatus::Summable, "{name}");
    r.certificate.unwrap()
}

#[test]
fn theorem1_printed_certificate_passes() {
    let t = Instant::now();
    let r = verify_certificate(&wz("theorem1")).unwrap();
    assert!(r.passed(), "{:?}", r.failure_detail);
    assert!(r.lattice_poles.is_empty());
    assert!(t.elapsed() < Duration::from_secs(1));
}

#[test]
fn printed_certificates_three_to_eight_pass() {
    for i in 3..=8 {
        let name = format!("theorem{i}");
        let r = verify_certificate(&wz(&name)).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.failure_detail);
    }
}

#[test]
fn theorem2_printed_certificate_has_the_wrong_sign() {
    let id = wz("theorem2");
    let printed = id.certificate.clone().unwrap();
    let r = verify_certificate(&id).unwrap();
    assert!(!r.symbolic_ok);
    assert!(r.exact_sums_ok);
    assert!(!wz_residual(&id, &printed).is_zero());
    let fixed = synthesized("theorem2");
    assert!(fixed.equals(&printed.neg()));
    assert!(wz_residual(&id, &printed.neg()).is_zero());
}

#[test]
fn theorem9_printed_fails_and_differs_in_one_coefficient() {
    let id = wz("theorem9");
    assert!(id.erratum);
    let printed = id.certificate.clone().unwrap();
    let r = verify_certificate(&id).unwrap();
    assert!(!r.symbolic_ok);
    assert!(r.exact_sums_ok);

    let fixed = synthesized("theorem9");
    assert!(verify_with_certificate(&id, &fixed, 20).unwrap().passed());
    // bring the repaired numerator over the printed denominator
    let num = (fixed.num() * printed.den())
        .div_exact(fixed.den())
        .unwrap();
    let diff = &num - printed.num();
    assert_eq!(diff.len(), 1);
    // relative to the k coefficient -22623909 of the source numerator
    let rel = |p: &Poly2| p.coeff(5, 3) / p.coeff(0, 1);
    assert_eq!(rel(&num), rat(465_707_008, -22_623_909));
    assert_eq!(rel(printed.num()), rat(46_570_008, -22_623_909));
}

#[test]
fn synthesized_equals_printed_where_printed_is_right() {
    for i in [1, 3, 4, 5, 6, 7, 8] {
        let name = format!("theorem{i}");
        let printed = wz(&name).certificate.unwrap();
        assert!(synthesized(&name).equals(&printed), "{name}");
    }
}

#[test]
fn synthesis_verifies_for_every_wz_identity() {
    for name in builtin_names() {
        let id = wz(name);
        if id.kind != Kind::Wz {
            continue;
        }
        let t = Instant::now();
        let r = synthesize_certificate(&id).unwrap();
        assert!(t.elapsed() < Duration::from_secs(120), "{name}");
        assert_eq!(r.status, GosperStatus::Summable, "{name}");
        assert!(r.degree_bound_used >= 0);
        let cert = r.certificate.unwrap();
        let report = verify_with_certificate(&id, &cert, 20).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.failure_detail);
    }
}

#[test]
fn numeric_series_are_not_wz() {
    assert!(synthesize_certificate(&wz("r1103")).is_err());
    assert!(synthesize_certificate(&wz("ramanujan")).is_err());
}

#[test]
fn h_ratio_matches_summand_values() {
    for (name, n, k) in [("theorem1", 4, 1), ("zeilberger", 5, 2), ("theorem3", 3, 0)] {
        let id = wz(name);
        let h =
            |k: u64| id.normalized_value(n + 1, k).unwrap() - id.normalized_value(n, k).unwrap();
        let expected = h(k + 1) / h(k);
        let got = h_ratio(&id)
            .unwrap()
            .eval(&int(n as i64), &int(k as i64))
            .unwrap();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn telescoping_matches_the_difference_of_rows() {
    for name in ["theorem1", "theorem4", "zeilberger"] {
        let mut id = wz(name);
        if id.certificate.is_none() {
            id.certificate = Some(synthesized(name));
        }
        let cert = id.certificate.clone().unwrap();
        for n in 0..6u64 {
            for k in 0..(2 * n + 4) {
                let lhs =
                    id.normalized_value(n + 1, k).unwrap() - id.normalized_value(n, k).unwrap();
                let rhs =
                    g_value(&id, &cert, n, k + 1).unwrap() - g_value(&id, &cert, n, k).unwrap();
                assert_eq!(lhs, rhs, "{name} n={n} k={k}");
            }
            assert_eq!(
                telescoping_probe(&id, n, 2 * n + 4).unwrap(),
                int(0),
                "{name} n={n}"
            );
        }
    }
}

#[test]
fn boundary_of_every_certificate_vanishes() {
    for i in 1..=11 {
        let name = format!("theorem{i}");
        let cert = synthesized(&name);
        let at0 = cert.num().subs(wzpi::algebra::Var::K, &int(0));
        assert_eq!(at0, Poly2::zero(), "{name}");
    }
}
