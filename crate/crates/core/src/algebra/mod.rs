//! Exact arithmetic over the rationals.
//!
//! Everything the verifier proves goes through this module: [`BigRat`]
//! coefficients, sparse bivariate polynomials [`Poly2`] in the two symbols
//! `n` and `k`, dense univariate polynomials [`UPoly`], and rational
//! functions [`RatFunc2`]. Rational functions are never reduced; equality is
//! decided by cross-multiplication, so no multivariate GCD is needed.

mod poly2;
mod ratfunc;
mod upoly;

pub use num_rational::BigRational as BigRat;
pub use poly2::{Poly2, Var};
pub use ratfunc::RatFunc2;
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("rational function with a zero denominator")]
    ZeroDenominator,
}

/// `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(v))
}

/// Canonical text for a rational: `a` or `a/b` with `b > 0`.
pub fn fmt_rat(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r` as an `i64` when it is an integer that fits.
pub fn rat_to_i64(r: &BigRat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

/// Exact `base^exp` for a possibly negative exponent. Panics on `0^-e`.
pub fn rat_pow(base: &BigRat, exp: i64) -> BigRat {
    let mut acc = BigRat::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Nearest `f64` to a rational, robust to numerators and denominators that
/// overflow `f64` individually.
pub fn rat_to_f64(r: &BigRat) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    if num_bits < 1000 && den_bits < 1000 {
        let n = big_to_f64(r.numer());
        let d = big_to_f64(r.denom());
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // Scale to 64 significant bits.
    let shift = num_bits - den_bits - 64;
    let scaled = if shift >= 0 {
        r.numer() / (r.denom() << (shift as usize))
    } else {
        (r.numer() << ((-shift) as usize)) / r.denom()
    };
    big_to_f64(&scaled) * 2f64.powi(shift as i32)
}

fn big_to_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Wrapper that prints a rational in canonical `a/b` form.
pub struct DisplayRat<'a>(pub &'a BigRat);

impl fmt::Display for DisplayRat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rat(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_normalizes_sign_and_gcd() {
        let r = rat(-3, -6);
        assert_eq!(fmt_rat(&r), "1/2");
        assert_eq!(fmt_rat(&rat(4, -2)), "-2");
        assert!(rat(0, 5).is_zero());
        assert_eq!(rat(0, 5).denom(), &BigInt::one());
    }

    #[test]
    fn powers() {
        assert_eq!(rat_pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(rat_pow(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(rat_pow(&rat(7, 3), 0), int(1));
    }

    #[test]
    fn to_f64_handles_huge_parts() {
        let big = rat_pow(&int(99), 400);
        let r = &big / (&big * int(3));
        assert!((rat_to_f64(&r) - 1.0 / 3.0).abs() < 1e-16);
        assert!((rat_to_f64(&rat(-5, 8)) + 0.625).abs() == 0.0);
    }
}
