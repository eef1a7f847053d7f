use super::{fmt_rat, BigRat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals, coefficients in
/// ascending order with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    c: Vec<BigRat>,
}

impl UPoly {
    pub fn new(mut c: Vec<BigRat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(v: BigRat) -> Self {
        Self::new(vec![v])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRat::zero(), BigRat::one()])
    }

    /// `x + a`.
    pub fn x_plus(a: BigRat) -> Self {
        Self::new(vec![a, BigRat::one()])
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.c.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> BigRat {
        self.c.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.c
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + super::rat_to_f64(a))
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        UPoly {
            c: self.c.iter().map(|a| a * s).collect(),
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

    /// `p(x + delta)`.
    pub fn shift(&self, delta: &BigRat) -> Self {
        if delta.is_zero() || self.c.len() <= 1 {
            return self.clone();
        }
        // Horner in the shifted variable.
        let lin = Self::x_plus(delta.clone());
        self.c.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &lin) + &Self::constant(a.clone())
        })
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Quotient and remainder of division by a nonzero `d`.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.lc().recip();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] * &lc_inv;
            for (j, dc) in d.c.iter().enumerate() {
                let t = &f * dc;
                rem[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        rem.truncate(dd);
        (Self::new(q), Self::new(rem))
    }

    /// `self / d` when the division leaves no remainder.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive_ints(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let mut ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| a.numer() * (&den / a.denom()))
            .collect();
        normalize_ints(&mut ints);
        ints
    }

    pub fn from_ints(ints: &[BigInt]) -> Self {
        Self::new(
            ints.iter()
                .map(|a| BigRat::from_integer(a.clone()))
                .collect(),
        )
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    ///
    /// Runs the primitive pseudo-remainder sequence over the integers, which
    /// keeps coefficient growth in check for the dense inputs that come out
    /// of the hypergeometric shift quotients.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.primitive_ints();
        let mut b = other.primitive_ints();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let mut r = prem(&a, &b);
            normalize_ints(&mut r);
            a = b;
            b = r;
        }
        Self::from_ints(&a).monic()
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_rat(&abs));
            } else if abs.is_one() && !(neg && out == "-") {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_rat(&abs), mono));
            }
        }
        out
    }
}

fn normalize_ints(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let g = if v.last().unwrap().is_negative() {
        -g
    } else {
        g
    };
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// Sparse pseudo-remainder of `a` by `b` over the integers.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let len = self.c.len().max(rhs.c.len());
        UPoly::new(
            (0..len)
                .map(|i| match (self.c.get(i), rhs.c.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let da = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let db = rhs
            .c
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ia: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| a.numer() * (&da / a.denom()))
            .collect();
        let ib: Vec<BigInt> = rhs
            .c
            .iter()
            .map(|b| b.numer() * (&db / b.denom()))
            .collect();
        let mut out = vec![BigInt::zero(); ia.len() + ib.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        UPoly::new(
            out.into_iter()
                .map(|c| BigRat::new(c, den.clone()))
                .collect(),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $m(self, rhs: UPoly) -> UPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}
