#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_2_PI, PI};
use wzpi::algebra::rat;
use wzpi::catalog::{builtin_names, load_builtin};
use wzpi::numeric::*;
use wzpi::wz::Kind;

fn cfg() -> NumericConfig {
    NumericConfig::default()
}

#[test]
fn carlson_points_give_two_over_pi() {
    for name in builtin_names() {
        let id = load_builtin(name).unwrap();
        if id.kind != Kind::Wz {
            continue;
        }
        let r = carlson_point_check(&id, &cfg()).unwrap();
        assert!(r.within(1e-9), "{name}: {r:?}");
    }
}

#[test]
fn carlson_points_by_coefficient() {
    let t = |name: &str| load_builtin(name).unwrap().carlson_point().unwrap();
    assert_eq!(t("theorem1"), rat(-1, 2));
    assert_eq!(t("theorem3"), rat(-1, 4));
    assert_eq!(t("theorem11"), rat(-1, 6));
}

#[test]
fn theorem1_rhs_and_series() {
    let id = load_builtin("theorem1").unwrap();
    let rhs = rhs_numeric(&id.rhs, &rat(-1, 2)).unwrap();
    assert!((rhs - FRAC_2_PI).abs() < 1e-13);
    let ram = load_builtin("ramanujan").unwrap();
    let a = series_numeric(&id, &rat(-1, 2), &cfg()).unwrap();
    let b = series_numeric(&ram, &rat(0, 1), &cfg()).unwrap();
    assert!((a - b).abs() < 1e-12);
}

#[test]
fn theorem6_cosine_form() {
    let id = load_builtin("theorem6").unwrap();
    let rhs = rhs_numeric(&id.rhs, &rat(-1, 2)).unwrap();
    assert!((rhs - cos_fifths_form()).abs() < 1e-12);
    let r = trig_identity_check();
    assert!(r.residual < 1e-15);
    assert!(r.root_residuals.iter().all(|x| x.abs() < 1e-14));
}

#[test]
fn pi_from_r1103() {
    // first partial sum from a 40-digit evaluation: 3.14159273001330566...
    let one = pi_from_partial("r1103", 1).unwrap();
    assert!((one - 3.141_592_730_013_305_66).abs() < 1e-14);
    assert!((one - PI).abs() < 1e-6);
    assert!((pi_from_partial("r1103", 2).unwrap() - PI).abs() < 1e-12);
    assert!((pi_from_series("r1103", &cfg()).unwrap() - PI).abs() < 1e-12);
}

#[test]
fn pi_from_ramanujan_needs_acceleration() {
    assert!((pi_from_series("ramanujan", &cfg()).unwrap() - PI).abs() < 1e-9);
    let plain = NumericConfig {
        acceleration: Acceleration::None,
        max_terms: 2000,
        ..cfg()
    };
    assert!(matches!(
        pi_from_series("ramanujan", &plain),
        Err(NumericError::NoConvergence { .. })
    ));
    assert!(matches!(
        pi_from_series("theorem1", &cfg()),
        Err(NumericError::NotPiSeries(_))
    ));
}

#[test]
fn accelerator_on_classical_series() {
    let c = NumericConfig {
        target_abs_tol: 1e-12,
        ..cfg()
    };
    let b: Vec<f64> = (0..300).map(|k| 1.0 / (k as f64 + 1.0)).collect();
    assert!((sum_alternating(&b, &c).unwrap() - 2f64.ln()).abs() < 1e-10);
    let b: Vec<f64> = (0..300).map(|k| 1.0 / (2.0 * k as f64 + 1.0)).collect();
    assert!((sum_alternating(&b, &c).unwrap() - PI / 4.0).abs() < 1e-10);
    // Catalan's constant to 20 digits
    let b: Vec<f64> = (0..300).map(|k| (2.0 * k as f64 + 1.0).powi(-2)).collect();
    assert!((sum_alternating(&b, &c).unwrap() - 0.915_965_594_177_219_015).abs() < 1e-10);
}

#[test]
fn terminating_series_at_integers_match_exact_sums() {
    let id = load_builtin("theorem1").unwrap();
    for n in 0..6i64 {
        let s = series_numeric(&id, &rat(n, 1), &cfg()).unwrap();
        let r = rhs_numeric(&id.rhs, &rat(n, 1)).unwrap();
        assert!((s - r).abs() < 1e-12 * r.abs().max(1.0), "n={n}");
    }
}
