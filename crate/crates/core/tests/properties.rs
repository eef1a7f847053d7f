use proptest::prelude::*;
use wzpi::algebra::{int, rat, BigRat, Poly2, RatFunc2, Var};
use wzpi::catalog::{load_builtin, parse_identity, serialize_identity, IdentityFile, PochEntry};
use wzpi::numeric::{gamma, rhs_numeric, sum_alternating, NumericConfig};
use wzpi::term::{poch_exact, rhs_exact, shift_quotient_k, shift_quotient_n};
use wzpi::wz::Kind;

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-9i64..=9, 1i64..=6).prop_map(|(a, b)| rat(a, b))
}

fn poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec(((0u32..3, 0u32..3), small_rat()), 0..5).prop_map(Poly2::from_terms)
}

fn nonzero_poly() -> impl Strategy<Value = Poly2> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly2::one(), a.clone());
    }

    #[test]
    fn shift_commutes_with_eval(p in poly(), d in -4i64..=4, n in small_rat(), k in small_rat()) {
        let dk = int(d);
        prop_assert_eq!(p.shift(Var::K, d).eval(&n, &k), p.eval(&n, &(&k + &dk)));
        prop_assert_eq!(p.shift(Var::N, d).eval(&n, &k), p.eval(&(&n + &dk), &k));
    }

    #[test]
    fn product_divides_exactly(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn ratfunc_equality_ignores_common_factors(num in poly(), den in nonzero_poly(), c in nonzero_poly()) {
        let r = RatFunc2::new(num.clone(), den.clone()).unwrap();
        let s = RatFunc2::new(&num * &c, &den * &c).unwrap();
        prop_assert!(r.equals(&s));
        prop_assert!(r.sub(&s).is_zero());
        let one = RatFunc2::one();
        prop_assert!(r.add(&one).equals(&s.add(&one)));
    }

    #[test]
    fn pochhammer_recurrence(a in small_rat(), j in 0u64..12) {
        let lhs = poch_exact(&a, j + 1);
        let rhs = poch_exact(&a, j) * (&a + int(j as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_quotient_matches_values(idx in 0usize..12, n in 0u64..8, k in 0u64..12) {
        let names = ["zeilberger", "theorem1", "theorem2", "theorem3", "theorem4", "theorem5",
                     "theorem6", "theorem7", "theorem8", "theorem9", "theorem10", "theorem11"];
        let id = load_builtin(names[idx]).unwrap();
        let nn = int(n as i64);
        let v0 = id.term.value_at(&nn, k).unwrap();
        prop_assume!(v0 != int(0));
        let v1 = id.term.value_at(&nn, k + 1).unwrap();
        if let Some(q) = shift_quotient_k(&id.term).eval(&nn, &int(k as i64)) {
            prop_assert_eq!(q, &v1 / &v0);
        }
        let w0 = id.normalized_value(n, k).unwrap();
        let w1 = id.normalized_value(n + 1, k).unwrap();
        if let Some(q) = shift_quotient_n(&id.term, &id.rhs).eval(&nn, &int(k as i64)) {
            prop_assert_eq!(q, &w1 / &w0);
        }
    }

    #[test]
    fn gamma_recurrence(x in 0.01f64..30.0) {
        let g1 = gamma(x + 1.0).unwrap();
        prop_assert!(((g1 - x * gamma(x).unwrap()) / g1).abs() <= 1e-12);
    }

    #[test]
    fn gamma_reflection(x in -10.0f64..10.0) {
        prop_assume!((x - x.round()).abs() > 1e-6);
        let pi = std::f64::consts::PI;
        let v = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * (pi * x).sin() / pi;
        prop_assert!((v - 1.0).abs() <= 1e-12, "{}", v);
    }

    #[test]
    fn rhs_numeric_matches_exact(idx in 0usize..12, n in 0u64..16) {
        let names = ["zeilberger", "theorem1", "theorem2", "theorem3", "theorem4", "theorem5",
                     "theorem6", "theorem7", "theorem8", "theorem9", "theorem10", "theorem11"];
        let id = load_builtin(names[idx]).unwrap();
        let exact = wzpi::algebra::rat_to_f64(&rhs_exact(&id.rhs, n));
        let got = rhs_numeric(&id.rhs, &int(n as i64)).unwrap();
        prop_assert!(((got - exact) / exact).abs() <= 1e-12);
    }

    #[test]
    fn accelerator_on_geometric_series(x in 0.0f64..0.95) {
        // sum (-x)^k = 1 / (1 + x)
        let b: Vec<f64> = (0..300).map(|k| x.powi(k)).collect();
        let s = sum_alternating(&b, &NumericConfig::default()).unwrap();
        prop_assert!((s - 1.0 / (1.0 + x)).abs() < 1e-10);
    }

    #[test]
    fn serialization_round_trip(f in identity_file()) {
        let text = serialize_identity(&f);
        let back = parse_identity(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serialize_identity(&back), text);
    }
}

fn poch_entry() -> impl Strategy<Value = PochEntry> {
    (-3i64..=3, small_rat(), 1u32..=3).prop_map(|(n_coeff, offset, pow)| PochEntry {
        n_coeff,
        offset,
        pow,
    })
}

fn identity_file() -> impl Strategy<Value = IdentityFile> {
    let rhs = (
        small_rat().prop_filter("nonzero", |r| *r != int(0)),
        prop::collection::vec((small_rat(), prop_oneof![-2i32..=-1, 1i32..=2]), 0..4),
    );
    let cert = prop::option::of((nonzero_poly(), nonzero_poly()));
    (
        "[a-z][a-z0-9_]{0,8}",
        small_rat().prop_filter("nonzero", |r| *r != int(0)),
        prop::collection::vec(small_rat(), 0..3),
        small_rat().prop_filter("nonzero", |r| *r != int(0)),
        prop::collection::vec(poch_entry(), 0..4),
        prop::collection::vec(poch_entry(), 0..3),
        0u32..4,
        rhs,
        cert,
        any::<bool>(),
    )
        .prop_map(
            |(
                name,
                z,
                mut p,
                lead,
                num_poch,
                den_poch,
                fact_pow,
                (rhs_base, rhs_poch),
                cert,
                erratum,
            )| {
                p.push(lead);
                let carlson_a = num_poch
                    .iter()
                    .find(|e| e.n_coeff < 0)
                    .map(|e| e.n_coeff.unsigned_abs() as u32);
                let (cert_num, cert_den) = match cert {
                    Some((a, b)) => (Some(a), Some(b)),
                    None => (None, None),
                };
                IdentityFile {
                    name,
                    kind: Kind::Wz,
                    carlson_a,
                    z,
                    p,
                    num_poch,
                    den_poch,
                    fact_pow,
                    rhs_base,
                    rhs_poch,
                    cert_num,
                    cert_den,
                    prefactor_rational: BigRat::from_integer(1.into()),
                    prefactor_sqrt: BigRat::from_integer(1.into()),
                    erratum,
                    inv_pi_multiple: None,
                }
            },
        )
}
