//! The WZ proof pipeline.
//!
//! For a normalized summand `F^(n, k) = F(n, k) / rhs(n)` and a certificate
//! `R(n, k)`, the pair `(F^, G = R F^)` is a WZ pair when
//!
//! ```text
//! F^(n+1, k) - F^(n, k) = G(n, k+1) - G(n, k).
//! ```
//!
//! Dividing through by `F^(n, k)` turns this into the rational-function
//! identity `r_n - 1 = R(n, k+1) r_k - R(n, k)` with `r_n`, `r_k` the shift
//! quotients of `F^`, which [`verify_certificate`] decides exactly. The
//! remaining proof obligations are `G(n, 0) = 0` and the `n = 0` base case.
//! [`verify_exact_sums`] checks the conclusion directly for small `n`.

use crate::algebra::{fmt_rat, int, rat_pow, BigRat, Poly2, RatFunc2, UPoly, Var};
use crate::term::{rhs_exact, ClosedForm, FactoredRatio, HyperTerm, TermError};
use num_traits::{One, Zero};
use std::fmt;

/// Default upper limit of `n` for exact-sum and pole checks.
pub const DEFAULT_N_MAX: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Terminating identity `sum_k F(n, k) = rhs(n)` proved by a WZ pair.
    Wz,
    /// A plain infinite series, only evaluated numerically.
    Numeric,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Wz => "wz",
            Kind::Numeric => "numeric",
        }
    }
}

#[derive(Debug, Clone)]
pub struct WZIdentity {
    pub name: String,
    pub term: HyperTerm,
    pub rhs: ClosedForm,
    pub certificate: Option<RatFunc2>,
    /// The `a` of the evaluation point `n = -1/(2a)`.
    pub carlson_a: Option<u32>,
    pub kind: Kind,
    /// The stored certificate is a known-corrupt transcription.
    pub erratum: bool,
    /// For numeric series: the sum equals this multiple of `1/pi`.
    pub inv_pi_multiple: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WzError {
    #[error("identity `{0}` has no certificate")]
    MissingCertificate(String),
    #[error("certificate has a pole at the lattice point n = {n}, k = {k}")]
    PoleOnLattice { n: u64, k: u64 },
    #[error("identity `{0}` is a numeric series, not a WZ identity")]
    NotWz(String),
    #[error("sum at n = {0} does not terminate")]
    NonTerminating(u64),
    #[error(transparent)]
    Term(#[from] TermError),
}

impl WZIdentity {
    /// `|b|` of the first numerator factor `(b*n + c)_k` with `b < 0`.
    pub fn first_negated_coeff(&self) -> Option<u32> {
        self.term
            .poch
            .iter()
            .find(|f| f.power > 0 && f.n_coeff < 0)
            .map(|f| f.n_coeff.unsigned_abs() as u32)
    }

    /// `n = -1/(2a)`.
    pub fn carlson_point(&self) -> Option<BigRat> {
        self.carlson_a
            .map(|a| BigRat::new((-1).into(), (2 * a as i64).into()))
    }

    pub(crate) fn require_wz(&self) -> Result<(), WzError> {
        match self.kind {
            Kind::Wz => Ok(()),
            Kind::Numeric => Err(WzError::NotWz(self.name.clone())),
        }
    }

    pub fn k_ratio(&self) -> FactoredRatio {
        self.term.k_ratio_factors()
    }

    pub fn n_ratio(&self) -> FactoredRatio {
        self.term.n_ratio_factors(&self.rhs)
    }

    /// `F^(n, k)` at a lattice point.
    pub fn normalized_value(&self, n: u64, k: u64) -> Result<BigRat, WzError> {
        Ok(self.term.value_at(&int(n as i64), k)? / rhs_exact(&self.rhs, n))
    }

    /// Exact `sum_k F(n, k)` over the terminating support, and `rhs(n)`.
    pub fn exact_sum(&self, n: u64) -> Result<(BigRat, BigRat), WzError> {
        let bound = self
            .term
            .termination_bound(n)
            .ok_or(WzError::NonTerminating(n))?;
        let lhs = self
            .term
            .row(&int(n as i64), bound)?
            .into_iter()
            .sum::<BigRat>();
        Ok((lhs, rhs_exact(&self.rhs, n)))
    }
}

/// Verdict of a verification run.
#[derive(Debug, Clone)]
pub struct CertReport {
    pub identity_name: String,
    pub symbolic_ok: bool,
    pub boundary_ok: bool,
    pub base_case_ok: bool,
    pub exact_sums_ok: bool,
    pub n_checked: u64,
    pub failure_detail: Option<String>,
    /// Lattice points `(n, k)` inside the summation support where the
    /// certificate denominator vanishes.
    pub lattice_poles: Vec<(u64, u64)>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.symbolic_ok && self.boundary_ok && self.base_case_ok && self.exact_sums_ok
    }
}

/// Cross-multiplied numerator of `(r_n - 1) - (R(k+1) r_k - R(k))`.
/// Zero exactly when `cert` is a WZ certificate for `id`.
pub fn wz_residual(id: &WZIdentity, cert: &RatFunc2) -> Poly2 {
    let r_n = id.n_ratio().normalized().to_ratfunc();
    let r_k = id.k_ratio().normalized().to_ratfunc();
    let lhs = r_n.sub(&RatFunc2::one());
    let rhs = cert.shift(Var::K, 1).mul(&r_k).sub(cert);
    lhs.cross_residual(&rhs)
}

/// `G(n, 0) = R(n, 0) F^(n, 0) = 0` identically in `n`. Since
/// `F^(n, 0) = 1 / rhs(n)` never vanishes this is `R(n, 0) = 0`.
pub fn boundary_vanishes(cert: &RatFunc2) -> bool {
    let den0 = cert.den().subs(Var::K, &BigRat::zero());
    !den0.is_zero() && cert.num().subs(Var::K, &BigRat::zero()).is_zero()
}

/// Certificate check with the default `n` range of [`DEFAULT_N_MAX`].
pub fn verify_certificate(id: &WZIdentity) -> Result<CertReport, WzError> {
    let cert = id
        .certificate
        .as_ref()
        .ok_or_else(|| WzError::MissingCertificate(id.name.clone()))?;
    verify_with_certificate(id, cert, DEFAULT_N_MAX)
}

/// Full verification of `id` against an explicit certificate: symbolic WZ
/// identity, boundary, base case, exact sums for `n = 0..=n_max`, and a scan
/// for certificate poles inside the summation support.
pub fn verify_with_certificate(
    id: &WZIdentity,
    cert: &RatFunc2,
    n_max: u64,
) -> Result<CertReport, WzError> {
    id.require_wz()?;
    let mut details = Vec::new();

    let residual = wz_residual(id, cert);
    let symbolic_ok = residual.is_zero();
    if !symbolic_ok {
        details.push(format!(
            "WZ residual is a nonzero polynomial with {} terms; lowest-degree terms: {}",
            residual.len(),
            residual.primitive().lowest_terms(4)
        ));
    }

    let boundary_ok = boundary_vanishes(cert);
    if !boundary_ok {
        details.push("G(n, 0) does not vanish identically".to_string());
    }

    let base_case_ok = check_base_case(id);
    if !base_case_ok {
        details.push("sum at n = 0 is not 1".to_string());
    }

    let sums = verify_exact_sums(id, n_max)?;
    if let Some(m) = &sums.first_failure {
        details.push(m.to_string());
    }

    let lattice_poles = lattice_poles(id, cert, n_max);
    if !lattice_poles.is_empty() {
        details.push(format!(
            "certificate denominator vanishes inside the support at {} lattice point(s), first (n, k) = {:?}",
            lattice_poles.len(),
            lattice_poles[0]
        ));
    }

    Ok(CertReport {
        identity_name: id.name.clone(),
        symbolic_ok,
        boundary_ok,
        base_case_ok,
        exact_sums_ok: sums.ok,
        n_checked: n_max,
        failure_detail: (!details.is_empty()).then(|| details.join("; ")),
        lattice_poles,
    })
}

/// Lattice points `(n, k)` with `n <= n_max` inside the summation support where
/// the certificate denominator vanishes.
pub fn lattice_poles(id: &WZIdentity, cert: &RatFunc2, n_max: u64) -> Vec<(u64, u64)> {
    let mut poles = Vec::new();
    for n in 0..=n_max {
        let Some(bound) = id.term.termination_bound(n) else {
            continue;
        };
        let den_n = cert.den().subs(Var::N, &int(n as i64));
        let den_k = den_n.as_univariate(Var::K).unwrap_or_default();
        for k in 0..=bound {
            if den_k.eval(&int(k as i64)).is_zero() {
                poles.push((n, k));
            }
        }
    }
    poles
}

/// `sum_k F^(0, k) = 1`.
pub fn check_base_case(id: &WZIdentity) -> bool {
    match id.exact_sum(0) {
        Ok((lhs, rhs)) => !rhs.is_zero() && lhs / rhs == BigRat::one(),
        Err(_) => false,
    }
}

#[derive(Debug, Clone)]
pub struct SumMismatch {
    pub n: u64,
    pub lhs: BigRat,
    pub rhs: BigRat,
}

impl fmt::Display for SumMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "exact sum differs at n = {}: LHS = {}, RHS = {}",
            self.n,
            fmt_rat(&self.lhs),
            fmt_rat(&self.rhs)
        )
    }
}

#[derive(Debug, Clone)]
pub struct ExactSums {
    pub ok: bool,
    pub n_checked: u64,
    pub first_failure: Option<SumMismatch>,
}

/// Checks `sum_k F(n, k) = rhs(n)` exactly for every `n` in `0..=n_max`.
/// Independent of any certificate.
pub fn verify_exact_sums(id: &WZIdentity, n_max: u64) -> Result<ExactSums, WzError> {
    id.require_wz()?;
    for n in 0..=n_max {
        let (lhs, rhs) = id.exact_sum(n)?;
        if lhs != rhs {
            return Ok(ExactSums {
                ok: false,
                n_checked: n,
                first_failure: Some(SumMismatch { n, lhs, rhs }),
            });
        }
    }
    Ok(ExactSums {
        ok: true,
        n_checked: n_max,
        first_failure: None,
    })
}

/// Order of vanishing in `e` and leading coefficient of `poly(n0 + e)`.
/// `None` for the zero polynomial.
fn order_at(poly_in_n: &UPoly, n0: &BigRat) -> Option<(i64, BigRat)> {
    let shifted = poly_in_n.shift(n0);
    shifted
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, c.clone()))
}

/// Order and leading coefficient of `F^(n + e, k)` as `e -> 0`; `None` if the
/// summand vanishes identically near `n`.
fn summand_germ(id: &WZIdentity, n: u64, k: u64) -> Option<(i64, BigRat)> {
    let t = &id.term;
    let n_rat = int(n as i64);
    let mut order = 0i64;
    let mut lead = rat_pow(&t.z, k as i64) * t.p.eval(&int(k as i64));
    if lead.is_zero() {
        return None;
    }
    let mut fact = BigRat::one();
    for i in 1..=k {
        fact *= int(i as i64);
    }
    lead /= rat_pow(&fact, t.fact_pow as i64);
    for f in &t.poch {
        let a0 = f.arg_at(&n_rat);
        let mut prod = BigRat::one();
        let mut zeros = 0i64;
        for i in 0..k {
            let v = &a0 + int(i as i64);
            if v.is_zero() {
                if f.n_coeff == 0 {
                    // constant zero factor, not removable
                    if f.power > 0 {
                        return None;
                    }
                    continue;
                }
                zeros += 1;
                prod *= int(f.n_coeff);
            } else {
                prod *= v;
            }
        }
        order += zeros * f.power as i64;
        lead *= rat_pow(&prod, f.power as i64);
    }
    let rhs = rhs_exact(&id.rhs, n);
    if rhs.is_zero() {
        return None;
    }
    Some((order, lead / rhs))
}

/// `G(n, k) = R(n, k) F^(n, k)` at a lattice point, as the limit along `n`
/// where `R` has a pole cancelled by a zero of `F^`.
pub fn g_value(id: &WZIdentity, cert: &RatFunc2, n: u64, k: u64) -> Result<BigRat, WzError> {
    let Some((f_order, f_lead)) = summand_germ(id, n, k) else {
        return Ok(BigRat::zero());
    };
    let kk = int(k as i64);
    let num = cert.num().subs(Var::K, &kk).as_univariate(Var::N).unwrap();
    let den = cert.den().subs(Var::K, &kk).as_univariate(Var::N).unwrap();
    let n0 = int(n as i64);
    let Some((num_order, num_lead)) = order_at(&num, &n0) else {
        return Ok(BigRat::zero());
    };
    let Some((den_order, den_lead)) = order_at(&den, &n0) else {
        return Err(WzError::PoleOnLattice { n, k });
    };
    match (f_order + num_order - den_order).cmp(&0) {
        std::cmp::Ordering::Greater => Ok(BigRat::zero()),
        std::cmp::Ordering::Equal => Ok(f_lead * num_lead / den_lead),
        std::cmp::Ordering::Less => Err(WzError::PoleOnLattice { n, k }),
    }
}

/// `sum_{k=0..=upto} [G(n, k+1) - G(n, k)]`, term by term.
pub fn telescoping_probe(id: &WZIdentity, n: u64, upto: u64) -> Result<BigRat, WzError> {
    let cert = id
        .certificate
        .as_ref()
        .ok_or_else(|| WzError::MissingCertificate(id.name.clone()))?;
    let mut g_prev = g_value(id, cert, n, 0)?;
    let mut acc = BigRat::zero();
    for k in 0..=upto {
        let g_next = g_value(id, cert, n, k + 1)?;
        acc += &g_next - &g_prev;
        g_prev = g_next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::term::{PochFactor, Prefactor};

    fn theorem1(cert: Option<RatFunc2>) -> WZIdentity {
        let term = HyperTerm {
            poch: vec![
                PochFactor::new(-1, int(0), 2),
                PochFactor::new(0, rat(1, 2), 1),
                PochFactor::new(1, rat(3, 2), -2),
            ],
            fact_pow: 1,
            z: int(-1),
            p: UPoly::new(vec![int(1), int(4)]),
            prefactor: Prefactor::default(),
        };
        let rhs = ClosedForm {
            base: rat(1, 4),
            poch_n: vec![(rat(3, 2), 2), (rat(5, 4), -1), (rat(3, 4), -1)],
        };
        WZIdentity {
            name: "theorem1".into(),
            term,
            rhs,
            certificate: cert,
            carlson_a: Some(1),
            kind: Kind::Wz,
            erratum: false,
            inv_pi_multiple: None,
        }
    }

    fn printed_cert() -> RatFunc2 {
        let n = Poly2::n();
        let k = Poly2::k();
        let c = |v: i64| Poly2::constant(int(v));
        let inner = &(&(&(&n.pow(2).scale(&int(6)) + &n.scale(&int(10))) + &c(4)) + &k)
            - &k.pow(2).scale(&int(2));
        let num = -(&inner * &k);
        let den = &(&(&n - &k) + &c(1)).pow(2) * &(&k.scale(&int(4)) + &c(1));
        RatFunc2::new(num, den).unwrap()
    }

    #[test]
    fn printed_theorem1_certificate_verifies() {
        let id = theorem1(Some(printed_cert()));
        let rep = verify_certificate(&id).unwrap();
        assert!(rep.passed(), "{:?}", rep.failure_detail);
        assert!(rep.lattice_poles.is_empty());
    }

    #[test]
    fn doubled_certificate_fails() {
        let cert = printed_cert().scale(&int(2));
        let id = theorem1(Some(cert.clone()));
        let rep = verify_with_certificate(&id, &cert, 3).unwrap();
        assert!(!rep.symbolic_ok);
        assert!(rep.boundary_ok && rep.base_case_ok && rep.exact_sums_ok);
        assert!(rep.failure_detail.unwrap().contains("residual"));
    }

    #[test]
    fn missing_certificate() {
        let id = theorem1(None);
        assert_eq!(
            verify_certificate(&id).unwrap_err(),
            WzError::MissingCertificate("theorem1".into())
        );
    }

    #[test]
    fn base_case_breaks_with_bad_normalization() {
        let mut id = theorem1(None);
        assert!(check_base_case(&id));
        id.rhs.base = rat(1, 3);
        // n = 0 is blind to the base, but n = 1 is not
        assert!(check_base_case(&id));
        assert!(!verify_exact_sums(&id, 2).unwrap().ok);
        let mut broken = theorem1(None);
        broken.term.p = UPoly::new(vec![int(2), int(4)]);
        assert!(!check_base_case(&broken));
    }

    #[test]
    fn exact_sums_theorem1() {
        let id = theorem1(None);
        let (lhs, rhs) = id.exact_sum(1).unwrap();
        assert_eq!(lhs, rat(3, 5));
        assert_eq!(rhs, rat(3, 5));
        let r = verify_exact_sums(&id, 12).unwrap();
        assert!(r.ok);
    }

    #[test]
    fn telescoping_theorem1() {
        let id = theorem1(Some(printed_cert()));
        assert_eq!(telescoping_probe(&id, 2, 10).unwrap(), BigRat::zero());
        let cert = printed_cert();
        let single = telescoping_probe(&id, 3, 0).unwrap();
        let expect = g_value(&id, &cert, 3, 1).unwrap() - g_value(&id, &cert, 3, 0).unwrap();
        assert_eq!(single, expect);
    }

    #[test]
    fn wz_equation_holds_at_lattice_points() {
        let cert = printed_cert();
        let id = theorem1(Some(cert.clone()));
        for n in 0..6 {
            for k in 0..9 {
                let lhs =
                    id.normalized_value(n + 1, k).unwrap() - id.normalized_value(n, k).unwrap();
                let rhs =
                    g_value(&id, &cert, n, k + 1).unwrap() - g_value(&id, &cert, n, k).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, k = {k}");
            }
        }
    }
}
