use super::{fmt_rat, BigRat, UPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// One of the two symbols a [`Poly2`] can mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    N,
    K,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::K => "k",
        }
    }
}

/// Sparse polynomial in `n` and `k` with rational coefficients.
///
/// Keys are `(deg_n, deg_k)`. No stored coefficient is zero, so structural
/// equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigRat>,
}

type IntTerm = ((u32, u32), BigInt);

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRat, deg_n: u32, deg_k: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((deg_n, deg_k), c);
        }
        Poly2 { terms }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::N => Self::monomial(BigRat::one(), 1, 0),
            Var::K => Self::monomial(BigRat::one(), 0, 1),
        }
    }

    pub fn n() -> Self {
        Self::var(Var::N)
    }

    pub fn k() -> Self {
        Self::var(Var::K)
    }

    /// `a*n + b*k + c`.
    pub fn linear(a: BigRat, b: BigRat, c: BigRat) -> Self {
        Self::from_terms([((1, 0), a), ((0, 1), b), ((0, 0), c)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigRat)>,
    {
        let mut terms: BTreeMap<(u32, u32), BigRat> = BTreeMap::new();
        for (e, c) in iter {
            *terms.entry(e).or_insert_with(BigRat::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly2 { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no `n` or `k`.
    pub fn as_constant(&self) -> Option<BigRat> {
        match self.terms.len() {
            0 => Some(BigRat::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, deg_n: u32, deg_k: u32) -> BigRat {
        self.terms
            .get(&(deg_n, deg_k))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(a, b)| if v == Var::N { a } else { b })
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.degree(v).is_some_and(|d| d > 0)
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, n: &BigRat, k: &BigRat) -> BigRat {
        let max_n = self.degree(Var::N).unwrap_or(0) as usize;
        let max_k = self.degree(Var::K).unwrap_or(0) as usize;
        let pn = powers(n, max_n);
        let pk = powers(k, max_k);
        self.terms.iter().fold(BigRat::zero(), |acc, (&(a, b), c)| {
            acc + c * &pn[a as usize] * &pk[b as usize]
        })
    }

    /// Replaces `var` by `var + delta` and expands.
    pub fn shift(&self, var: Var, delta: i64) -> Self {
        self.shift_by(var, &BigRat::from_integer(BigInt::from(delta)))
    }

    pub fn shift_by(&self, var: Var, delta: &BigRat) -> Self {
        if delta.is_zero() {
            return self.clone();
        }
        let max = self.degree(var).unwrap_or(0) as usize;
        let dp = powers(delta, max);
        let binom = binomial_rows(max);
        let mut out: BTreeMap<(u32, u32), BigRat> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let d = if var == Var::N { a } else { b } as usize;
            // (v + delta)^d = sum_i C(d,i) v^i delta^(d-i)
            for i in 0..=d {
                let coeff = c * &binom[d][i] * &dp[d - i];
                let key = if var == Var::N {
                    (i as u32, b)
                } else {
                    (a, i as u32)
                };
                *out.entry(key).or_insert_with(BigRat::zero) += coeff;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly2 { terms: out }
    }

    /// Substitutes a constant for one variable.
    pub fn subs(&self, var: Var, value: &BigRat) -> Self {
        let max = self.degree(var).unwrap_or(0) as usize;
        let vp = powers(value, max);
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| match var {
            Var::N => ((0, b), c * &vp[a as usize]),
            Var::K => ((a, 0), c * &vp[b as usize]),
        }))
    }

    /// Coefficients of `k^0, k^1, ...` as polynomials in `n`.
    pub fn coeffs_in_k(&self) -> Vec<UPoly> {
        let deg = match self.degree(Var::K) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut rows: Vec<Vec<BigRat>> = vec![Vec::new(); deg + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut rows[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, BigRat::zero());
            }
            row[a as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    /// Inverse of [`Poly2::coeffs_in_k`].
    pub fn from_coeffs_in_k(coeffs: &[UPoly]) -> Self {
        let mut terms = BTreeMap::new();
        for (b, p) in coeffs.iter().enumerate() {
            for (a, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((a as u32, b as u32), c.clone());
                }
            }
        }
        Poly2 { terms }
    }

    /// The polynomial as a univariate one in `var`, if it does not mention
    /// the other variable.
    pub fn as_univariate(&self, var: Var) -> Option<UPoly> {
        let other = if var == Var::N { Var::K } else { Var::N };
        if self.mentions(other) {
            return None;
        }
        let deg = self.degree(var).unwrap_or(0) as usize;
        let mut c = vec![BigRat::zero(); deg + 1];
        for (&(a, b), x) in &self.terms {
            c[if var == Var::N { a } else { b } as usize] = x.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn from_univariate(p: &UPoly, var: Var) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| {
            let e = i as u32;
            (if var == Var::N { (e, 0) } else { (0, e) }, c.clone())
        }))
    }

    /// Terms in graded-lexicographic order with `n > k`, highest first.
    pub fn graded_lex(&self) -> Vec<((u32, u32), &BigRat)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by_key(|(e, _)| std::cmp::Reverse((e.0 + e.1, e.0)));
        v
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<((u32, u32), &BigRat)> {
        self.terms()
            .max_by(|(x, _), (y, _)| (x.0 + x.1, x.0).cmp(&(y.0 + y.1, y.0)))
    }

    /// `self / d` if `d` divides `self` exactly, by multivariate division
    /// with respect to graded-lex order.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        let ((ln, lk), lc) = d.leading()?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot: BTreeMap<(u32, u32), BigRat> = BTreeMap::new();
        while let Some(((rn, rk), rc)) = rem.leading() {
            if rn < ln || rk < lk {
                return None;
            }
            let c = rc / &lc;
            let mono = Poly2::monomial(c.clone(), rn - ln, rk - lk);
            rem = &rem - &(&mono * d);
            quot.insert((rn - ln, rk - lk), c);
        }
        Some(Poly2 { terms: quot })
    }

    /// Integer form: `self = ints / den` with a positive common denominator.
    fn to_integer(&self) -> (Vec<IntTerm>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .terms
            .iter()
            .map(|(e, c)| (*e, c.numer() * (&den / c.denom())))
            .collect();
        (ints, den)
    }

    /// Rational content, signed so that `self / content()` has coprime
    /// integer coefficients and a positive graded-lex leading coefficient.
    pub fn content(&self) -> BigRat {
        let (ints, den) = self.to_integer();
        let g = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        if g.is_zero() {
            return BigRat::one();
        }
        let sign = match self.leading() {
            Some((_, c)) if c.is_negative() => -BigInt::one(),
            _ => BigInt::one(),
        };
        BigRat::new(g * sign, den)
    }

    /// `self / content()`: integer coefficients, gcd 1, positive leading term.
    pub fn primitive(&self) -> Poly2 {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Lowest-degree terms (graded-lex ascending), at most `count`.
    pub fn lowest_terms(&self, count: usize) -> Poly2 {
        let mut v = self.graded_lex();
        v.reverse();
        Self::from_terms(v.into_iter().take(count).map(|(e, c)| (e, c.clone())))
    }
}

pub(crate) fn powers(x: &BigRat, max: usize) -> Vec<BigRat> {
    let mut v = Vec::with_capacity(max + 1);
    v.push(BigRat::one());
    for i in 0..max {
        let next = &v[i] * x;
        v.push(next);
    }
    v
}

fn binomial_rows(max: usize) -> Vec<Vec<BigRat>> {
    let mut rows: Vec<Vec<BigRat>> = vec![vec![BigRat::one()]];
    for d in 1..=max {
        let prev = &rows[d - 1];
        let mut row = vec![BigRat::one(); d + 1];
        for i in 1..d {
            row[i] = &prev[i - 1] + &prev[i];
        }
        rows.push(row);
    }
    rows
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            match terms.get_mut(e) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        Poly2 { terms }
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        if self.is_zero() || rhs.is_zero() {
            return Poly2::zero();
        }
        // Multiply over the integers and divide once at the end; per-term
        // rational products would pay a gcd each.
        let (a, da) = self.to_integer();
        let (b, db) = rhs.to_integer();
        let mut acc: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for ((an, ak), ac) in &a {
            for ((bn, bk), bc) in &b {
                *acc.entry((an + bn, ak + bk)).or_insert_with(BigInt::zero) += ac * bc;
            }
        }
        let den = da * db;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, BigRat::new(c, den.clone())))
            .collect();
        Poly2 { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $m(self, rhs: Poly2) -> Poly2 {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly2> for Poly2 {
            type Output = Poly2;
            fn $m(self, rhs: &Poly2) -> Poly2 {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

/// Canonical text in graded-lex order, e.g. `2*k^3 - k^2 - 6*n^2*k`.
///
/// The output reparses under the catalog expression grammar. A negative
/// leading term always spells out its coefficient (`-1*n^2`), because the
/// grammar binds unary minus tighter than `^`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.graded_lex().into_iter().enumerate() {
            let mono = monomial_text(a, b);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = abs.is_one();
            match (mono.is_empty(), unit && !(i == 0 && neg)) {
                (true, _) => f.write_str(&fmt_rat(&abs))?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{}*{}", fmt_rat(&abs), mono)?,
            }
        }
        Ok(())
    }
}

fn monomial_text(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    for (v, e) in [("n", a), ("k", b)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn n() -> Poly2 {
        Poly2::n()
    }
    fn k() -> Poly2 {
        Poly2::k()
    }
    fn c(v: i64) -> Poly2 {
        Poly2::constant(int(v))
    }

    #[test]
    fn add_cancels() {
        let s = &(&n() + &k()) + &(&n() - &k());
        assert_eq!(s, n().scale(&int(2)));
    }

    #[test]
    fn mul_by_zero_is_empty() {
        let p = &(&n() + &k()) * &Poly2::zero();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn hand_expansion_matches() {
        // (2k^2 - k - 4 - 10n - 6n^2) * k
        let f = &(&(&(&k().pow(2).scale(&int(2)) - &k()) - &c(4)) - &n().scale(&int(10)))
            - &n().pow(2).scale(&int(6));
        let prod = &f * &k();
        let expected = Poly2::from_terms([
            ((0, 3), int(2)),
            ((0, 2), int(-1)),
            ((0, 1), int(-4)),
            ((1, 1), int(-10)),
            ((2, 1), int(-6)),
        ]);
        assert_eq!(prod, expected);
        let (n0, k0) = (int(2), int(3));
        assert_eq!(prod.eval(&n0, &k0), f.eval(&n0, &k0) * &k0);
    }

    #[test]
    fn eval_examples() {
        let p = &k().scale(&int(4)) + &c(1);
        assert_eq!(p.eval(&int(0), &int(0)), int(1));
        assert_eq!(p.eval(&int(0), &int(3)), int(13));
        let inner = &(&(&(&n().pow(2).scale(&int(6)) + &n().scale(&int(10))) + &c(4)) + &k())
            - &k().pow(2).scale(&int(2));
        let cert = -(&inner * &k());
        assert_eq!(cert.eval(&int(0), &int(1)), int(-3));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(k().shift(Var::K, 1), &k() + &c(1));
        assert_eq!(
            n().pow(2).shift(Var::N, 1),
            &(&n().pow(2) + &n().scale(&int(2))) + &c(1)
        );
        let p = &k().scale(&int(4)) + &c(1);
        assert_eq!(p.shift(Var::K, 1), &k().scale(&int(4)) + &c(5));
        assert_eq!(p.shift(Var::K, -1), &k().scale(&int(4)) - &c(3));
    }

    #[test]
    fn exact_division() {
        let a = &n() - &k();
        let b = &n() + &k();
        let prod = &(&a * &b) * &a;
        assert_eq!(prod.div_exact(&a), Some(&a * &b));
        assert_eq!(prod.div_exact(&(&k() + &c(1))), None);
        assert_eq!(Poly2::zero().div_exact(&a), Some(Poly2::zero()));
    }

    #[test]
    fn display_is_graded_lex() {
        let p = Poly2::from_terms([
            ((0, 3), int(2)),
            ((0, 2), int(-1)),
            ((2, 1), int(-6)),
            ((0, 0), rat(1, 2)),
        ]);
        assert_eq!(p.to_string(), "-6*n^2*k + 2*k^3 - k^2 + 1/2");
        assert_eq!((-n().pow(2)).to_string(), "-1*n^2");
        assert_eq!(Poly2::zero().to_string(), "0");
    }

    #[test]
    fn primitive_part() {
        let p = Poly2::from_terms([((1, 0), rat(-2, 3)), ((0, 0), rat(4, 9))]);
        let pp = p.primitive();
        assert_eq!(pp, Poly2::from_terms([((1, 0), int(3)), ((0, 0), int(-2))]));
        assert_eq!(pp.scale(&p.content()), p);
    }

    #[test]
    fn coeffs_in_k_round_trip() {
        let p = Poly2::from_terms([((2, 0), int(3)), ((0, 2), int(-1)), ((1, 1), rat(1, 2))]);
        let cs = p.coeffs_in_k();
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly2::from_coeffs_in_k(&cs), p);
    }
}
