//! Floating-point evaluation: Gamma and Pochhammer at rational arguments,
//! the catalog series at non-integer `n`, and the `1/pi` series.
//!
//! Every argument is formed exactly as a [`BigRat`] and converted to `f64`
//! once, so no rounding enters before the special functions.

use crate::algebra::{rat_to_f64, BigRat};
use crate::catalog::{load_builtin, CatalogError};
use crate::term::{ClosedForm, HyperTerm, SpecializedTerm};
use crate::wz::{Kind, WZIdentity};
use num_traits::{Signed, Zero};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericError {
    #[error("Gamma pole at {0}")]
    Pole(String),
    #[error("no convergence after {terms} terms (error estimate {estimate:e})")]
    NoConvergence { terms: usize, estimate: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("identity `{0}` has no carlson_a")]
    NoCarlsonPoint(String),
    #[error("`{0}` is not a 1/pi series")]
    NotPiSeries(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceleration {
    None,
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    pub target_abs_tol: f64,
    pub max_terms: usize,
    pub acceleration: Acceleration,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            target_abs_tol: 1e-10,
            max_terms: 10_000,
            acceleration: Acceleration::Alternating,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<(), NumericError> {
        if self.target_abs_tol.is_nan() || self.target_abs_tol <= 0.0 {
            return Err(NumericError::InvalidConfig(
                "tolerance must be positive".into(),
            ));
        }
        if self.max_terms < 1 {
            return Err(NumericError::InvalidConfig(
                "max_terms must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `sin(pi x)` with the argument reduced first, so it vanishes exactly at
/// integers and keeps full relative accuracy near them.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).sin()
}

/// `(ln |Gamma(x)|, sign Gamma(x))`.
pub fn log_gamma(x: f64) -> Result<(f64, f64), NumericError> {
    if is_pole(x) || x.is_nan() {
        return Err(NumericError::Pole(format!("{x}")));
    }
    if x < 0.5 {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        let s = sin_pi(x);
        let (lg, sg) = log_gamma(1.0 - x)?;
        return Ok((PI.ln() - s.abs().ln() - lg, s.signum() * sg));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    let lg = 0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln();
    Ok((lg, 1.0))
}

pub fn gamma(x: f64) -> Result<f64, NumericError> {
    let (lg, s) = log_gamma(x)?;
    Ok(s * lg.exp())
}

fn pole_at(r: &BigRat) -> bool {
    r.is_integer() && !r.is_positive()
}

/// `Gamma(arg + shift) / Gamma(arg)`.
pub fn poch_numeric(arg: &BigRat, shift: &BigRat) -> Result<f64, NumericError> {
    let end = arg + shift;
    for r in [arg, &end] {
        if pole_at(r) {
            return Err(NumericError::Pole(crate::algebra::fmt_rat(r)));
        }
    }
    if shift.is_integer() && shift.abs() <= BigRat::from_integer(64.into()) {
        let m = i64::try_from(shift.to_integer()).unwrap();
        let a = rat_to_f64(arg);
        let mut acc = 1.0;
        if m >= 0 {
            for i in 0..m {
                acc *= a + i as f64;
            }
        } else {
            for i in 1..=-m {
                acc /= a - i as f64;
            }
        }
        return Ok(acc);
    }
    let (l1, s1) = log_gamma(rat_to_f64(&end))?;
    let (l0, s0) = log_gamma(rat_to_f64(arg))?;
    Ok(s1 * s0 * (l1 - l0).exp())
}

/// `base^t prod (arg)_t^pow`.
pub fn rhs_numeric(rhs: &ClosedForm, t: &BigRat) -> Result<f64, NumericError> {
    let base = rat_to_f64(&rhs.base);
    let mut acc = if t.is_integer() {
        base.powi(i32::try_from(t.to_integer()).unwrap_or(i32::MAX))
    } else {
        base.powf(rat_to_f64(t))
    };
    for (arg, pw) in &rhs.poch_n {
        acc *= poch_numeric(arg, t)?.powi(*pw);
    }
    Ok(acc)
}

/// Terms of the summand at `n = t` from the `k`-ratio recurrence, including
/// the prefactor. Stops early if a numerator factor reaches zero.
fn terms(term: &HyperTerm, t: &BigRat, count: usize) -> Result<Vec<f64>, NumericError> {
    let args: Vec<(f64, i32, bool)> = term
        .poch
        .iter()
        .map(|f| {
            let a = f.arg_at(t);
            (rat_to_f64(&a), f.power, pole_at(&a))
        })
        .collect();
    let z = rat_to_f64(&term.z);
    let pre = rat_to_f64(&term.prefactor.rational) * rat_to_f64(&term.prefactor.sqrt_of).sqrt();
    let mut h = pre;
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        out.push(h * term.p.eval_f64(k as f64));
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0).powi(term.fact_pow as i32);
        for (a, pw, int_nonpos) in &args {
            let v = a + kf;
            if *int_nonpos && v == 0.0 {
                if *pw > 0 {
                    return Ok(out);
                }
                return Err(NumericError::Pole(format!("denominator factor at k = {k}")));
            }
            ratio *= v.powi(*pw);
        }
        h *= ratio;
    }
    Ok(out)
}

/// Cohen, Rodriguez Villegas and Zagier's acceleration of
/// `sum_k (-1)^k b_k` using the first `b.len()` terms.
pub fn cvz_alternating(b: &[f64]) -> f64 {
    cvz_with_rounding(b).0
}

/// The estimate and a bound on its floating-point rounding error.
fn cvz_with_rounding(b: &[f64]) -> (f64, f64) {
    let n = b.len() as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(n);
    d = (d + 1.0 / d) / 2.0;
    let mut bb = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    let mut mag = 0.0;
    for (k, bk) in b.iter().enumerate() {
        let kf = k as f64;
        c = bb - c;
        s += c * bk;
        mag += (c * bk).abs();
        bb = (kf + n) * (kf - n) * bb / ((kf + 0.5) * (kf + 1.0));
    }
    (s / d, 4.0 * f64::EPSILON * mag / d)
}

/// Most terms the accelerator is run with; beyond this `(3 + sqrt 8)^N`
/// overflows and double precision has long been exhausted.
const CVZ_MAX: usize = 300;

/// `sum_k (-1)^k b_k`, raising the number of accelerated terms until two
/// estimates agree to within a tenth of the tolerance. Rounding counts
/// toward the error estimate, so a tolerance below what double precision
/// can resolve ends in `NoConvergence`.
pub fn sum_alternating(b: &[f64], cfg: &NumericConfig) -> Result<f64, NumericError> {
    let cap = b.len().min(CVZ_MAX);
    let mut n = cap.min(8);
    let (mut prev, _) = cvz_with_rounding(&b[..n]);
    let mut estimate = f64::INFINITY;
    while n < cap {
        n = (n + 8).min(cap);
        let (cur, rounding) = cvz_with_rounding(&b[..n]);
        estimate = (cur - prev).abs() + rounding;
        if estimate <= cfg.target_abs_tol * 0.1 {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(NumericError::NoConvergence { terms: n, estimate })
}

/// Plain summation, stopping once the next term drops below a tenth of the
/// tolerance.
fn direct(a: &[f64], cfg: &NumericConfig) -> Result<f64, NumericError> {
    let mut s = 0.0;
    for (ak, next) in a.iter().zip(&a[1..]) {
        s += ak;
        if next.abs() <= cfg.target_abs_tol * 0.1 {
            return Ok(s);
        }
    }
    Err(NumericError::NoConvergence {
        terms: a.len(),
        estimate: a.last().map_or(f64::INFINITY, |x| x.abs()),
    })
}

/// Value of `sum_k F(t, k)`, prefactor included.
pub fn series_numeric(
    id: &WZIdentity,
    t: &BigRat,
    cfg: &NumericConfig,
) -> Result<f64, NumericError> {
    cfg.validate()?;
    let alternating = id.term.z.is_negative() && cfg.acceleration == Acceleration::Alternating;
    let want = if alternating {
        cfg.max_terms.min(CVZ_MAX)
    } else {
        cfg.max_terms
    };
    let a = terms(&id.term, t, want + 1)?;
    let finite = a.len() < want + 1;
    if finite {
        return Ok(a.iter().sum());
    }
    if alternating {
        let b: Vec<f64> = a
            .iter()
            .enumerate()
            .map(|(k, x)| if k % 2 == 0 { *x } else { -x })
            .collect();
        sum_alternating(&b, cfg)
    } else {
        direct(&a, cfg)
    }
}

/// Sum of the first `count` terms, no acceleration.
pub fn partial_sum(id: &WZIdentity, t: &BigRat, count: usize) -> Result<f64, NumericError> {
    Ok(terms(&id.term, t, count)?.iter().sum())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarlsonReport {
    pub t: BigRat,
    pub series: f64,
    pub rhs: f64,
    /// `|series - rhs|`.
    pub series_vs_rhs: f64,
    /// `|rhs - 2/pi|`.
    pub rhs_vs_two_over_pi: f64,
}

impl CarlsonReport {
    pub fn within(&self, tol: f64) -> bool {
        self.series_vs_rhs < tol && self.rhs_vs_two_over_pi < tol
    }
}

/// Both sides of a WZ identity at `n = -1/(2a)`, compared with `2/pi`.
pub fn carlson_point_check(
    id: &WZIdentity,
    cfg: &NumericConfig,
) -> Result<CarlsonReport, NumericError> {
    let t = id
        .carlson_point()
        .ok_or_else(|| NumericError::NoCarlsonPoint(id.name.clone()))?;
    carlson_check_at(id, &t, cfg)
}

/// Same comparison at an arbitrary `n = t`.
pub fn carlson_check_at(
    id: &WZIdentity,
    t: &BigRat,
    cfg: &NumericConfig,
) -> Result<CarlsonReport, NumericError> {
    let series = series_numeric(id, t, cfg)?;
    let rhs = rhs_numeric(&id.rhs, t)?;
    Ok(CarlsonReport {
        t: t.clone(),
        series,
        rhs,
        series_vs_rhs: (series - rhs).abs(),
        rhs_vs_two_over_pi: (rhs - 2.0 / PI).abs(),
    })
}

/// Whether substituting `n = -1/(2a)` turns the summand into exactly the
/// `(1/2)_k^3 / k!^3 (-1)^k (4k+1)` summand, comparing factor multisets.
pub fn reduces_to_ramanujan(id: &WZIdentity) -> bool {
    let Some(t) = id.carlson_point() else {
        return false;
    };
    let half = BigRat::new(1.into(), 2.into());
    let target = SpecializedTerm {
        num_args: vec![half.clone(), half.clone(), half],
        den_args: Vec::new(),
        fact_pow: 3,
        z: BigRat::from_integer((-1).into()),
        p: crate::algebra::UPoly::new(vec![
            BigRat::from_integer(1.into()),
            BigRat::from_integer(4.into()),
        ]),
    };
    id.term.specialize(&t) == target
}

fn pi_series(name: &str) -> Result<(WZIdentity, f64), NumericError> {
    let id = load_builtin(name)?;
    match (id.kind, id.inv_pi_multiple) {
        (Kind::Numeric, Some(m)) => Ok((id, m as f64)),
        _ => Err(NumericError::NotPiSeries(name.into())),
    }
}

/// `pi` from a builtin series summing to `m / pi`.
pub fn pi_from_series(name: &str, cfg: &NumericConfig) -> Result<f64, NumericError> {
    let (id, m) = pi_series(name)?;
    Ok(m / series_numeric(&id, &BigRat::zero(), cfg)?)
}

/// `pi` from the first `count` terms of a builtin series.
pub fn pi_from_partial(name: &str, count: usize) -> Result<f64, NumericError> {
    let (id, m) = pi_series(name)?;
    Ok(m / partial_sum(&id, &BigRat::zero(), count)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigReport {
    /// `|cos(pi/5) + cos(2 pi/5) - sqrt(5)/2|`.
    pub residual: f64,
    /// `4x^2 - 2x - 1` at `x = cos(pi/5)` and `x = cos(2 pi/5)`.
    pub root_residuals: [f64; 2],
}

pub fn trig_identity_check() -> TrigReport {
    let c1 = (PI / 5.0).cos();
    let c2 = (2.0 * PI / 5.0).cos();
    let q = |x: f64| 4.0 * x * x - 2.0 * x - 1.0;
    TrigReport {
        residual: (c1 + c2 - 5f64.sqrt() / 2.0).abs(),
        root_residuals: [q(c1), q(-c2)],
    }
}

/// `sqrt(5) / (pi (cos(pi/5) + cos(2 pi/5)))`, the form the pentagonal
/// identity's right side takes at `n = -1/2`.
pub fn cos_fifths_form() -> f64 {
    5f64.sqrt() / (PI * ((PI / 5.0).cos() + (2.0 * PI / 5.0).cos()))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use crate::term::{poch_exact, rhs_exact};

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn gamma_examples() {
        let (lg, s) = log_gamma(0.5).unwrap();
        assert!(close(lg, PI.sqrt().ln(), 1e-14) && s == 1.0);
        assert!(close(gamma(5.0).unwrap(), 24.0, 1e-13));
        let (lg, s) = log_gamma(-0.5).unwrap();
        assert_eq!(s, -1.0);
        // ln|Gamma(-1/2)| from a 30-digit reference
        assert!(close(lg, 1.265_512_123_484_645_4, 1e-14));
        assert!(matches!(log_gamma(0.0), Err(NumericError::Pole(_))));
        assert!(matches!(log_gamma(-3.0), Err(NumericError::Pole(_))));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(poch_numeric(&rat(7, 3), &int(0)).unwrap(), 1.0);
        // Gamma(1/4)/Gamma(3/4), 30-digit reference
        assert!(close(
            poch_numeric(&rat(3, 4), &rat(-1, 2)).unwrap(),
            2.958_675_119_188_638_9,
            1e-12
        ));
        let exact = rat_to_f64(&poch_exact(&rat(1, 2), 3));
        assert_eq!(poch_numeric(&rat(1, 2), &int(3)).unwrap(), exact);
        assert_eq!(exact, 1.875);
        assert!(poch_numeric(&int(-2), &rat(1, 2)).is_err());
    }

    #[test]
    fn rhs_agrees_with_exact_values() {
        let rhs = ClosedForm {
            base: rat(256, 3125),
            poch_n: vec![
                (rat(5, 4), 1),
                (rat(3, 4), 1),
                (rat(3, 2), 2),
                (rat(6, 5), -1),
            ],
        };
        assert_eq!(rhs_numeric(&rhs, &int(0)).unwrap(), 1.0);
        for n in 0..15u64 {
            let exact = rat_to_f64(&rhs_exact(&rhs, n));
            assert!(close(
                rhs_numeric(&rhs, &int(n as i64)).unwrap(),
                exact,
                1e-12
            ));
        }
    }

    #[test]
    fn accelerator_on_log2() {
        let b: Vec<f64> = (0..40).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        assert!((cvz_alternating(&b) - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn trig_identity() {
        let r = trig_identity_check();
        assert!(r.residual < 1e-15);
        assert!(r.root_residuals.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn config_validation() {
        let mut cfg = NumericConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.target_abs_tol = 0.0;
        assert!(cfg.validate().is_err());
        cfg.target_abs_tol = 1e-3;
        cfg.max_terms = 0;
        assert!(cfg.validate().is_err());
    }
}
