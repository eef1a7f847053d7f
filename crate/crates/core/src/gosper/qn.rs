use crate::algebra::{BigRat, Poly2, UPoly, Var};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Element of `Q(n)`: a reduced fraction of polynomials in `n` with monic
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QnFrac {
    num: UPoly,
    den: UPoly,
}

impl QnFrac {
    /// Panics on a zero denominator.
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "QnFrac with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let s = den.lc().recip();
        QnFrac {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn from_poly(p: UPoly) -> Self {
        QnFrac {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UPoly::one())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        QnFrac {
            num: base.num.pow(e.unsigned_abs()),
            den: base.den.pow(e.unsigned_abs()),
        }
    }

    pub fn eval(&self, n: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(n);
        (!d.is_zero()).then(|| self.num.eval(n) / d)
    }
}

impl Add for &QnFrac {
    type Output = QnFrac;
    fn add(self, rhs: &QnFrac) -> QnFrac {
        if self.den == rhs.den {
            return QnFrac::new(&self.num + &rhs.num, self.den.clone());
        }
        QnFrac::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &QnFrac {
    type Output = QnFrac;
    fn sub(self, rhs: &QnFrac) -> QnFrac {
        self + &(-rhs)
    }
}

impl Neg for &QnFrac {
    type Output = QnFrac;
    fn neg(self) -> QnFrac {
        QnFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QnFrac {
    type Output = QnFrac;
    fn mul(self, rhs: &QnFrac) -> QnFrac {
        if self.is_zero() || rhs.is_zero() {
            return QnFrac::zero();
        }
        QnFrac::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &QnFrac {
    type Output = QnFrac;
    fn div(self, rhs: &QnFrac) -> QnFrac {
        self * &rhs.recip()
    }
}

impl fmt::Display for QnFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num.display_in("n"))
        } else {
            write!(
                f,
                "({}) / ({})",
                self.num.display_in("n"),
                self.den.display_in("n")
            )
        }
    }
}

/// Polynomial in `k` over `Q(n)`, coefficients in ascending powers of `k`
/// with a nonzero leading one.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPolyQn {
    c: Vec<QnFrac>,
}

impl UniPolyQn {
    pub fn new(mut c: Vec<QnFrac>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPolyQn { c }
    }

    pub fn zero() -> Self {
        UniPolyQn { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QnFrac::one())
    }

    pub fn constant(c: QnFrac) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[QnFrac] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> QnFrac {
        self.c.get(i).cloned().unwrap_or_else(QnFrac::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> QnFrac {
        self.c.last().cloned().unwrap_or_else(QnFrac::zero)
    }

    pub fn from_poly2(p: &Poly2) -> Self {
        Self::new(p.coeffs_in_k().into_iter().map(QnFrac::from_poly).collect())
    }

    /// `self = poly / den` with `poly` in `Q[n, k]` and `den` in `Q[n]`.
    pub fn to_poly2(&self) -> (Poly2, UPoly) {
        let mut den = UPoly::one();
        for c in &self.c {
            let g = den.gcd(c.den());
            den = &den * &c.den().div_exact(&g).unwrap();
        }
        let rows: Vec<UPoly> = self
            .c
            .iter()
            .map(|c| &c.num * &den.div_exact(&c.den).unwrap())
            .collect();
        (Poly2::from_coeffs_in_k(&rows), den)
    }

    pub fn scale(&self, s: &QnFrac) -> Self {
        Self::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// `p(k + delta)`.
    pub fn shift(&self, delta: i64) -> Self {
        if delta == 0 || self.c.len() <= 1 {
            return self.clone();
        }
        let lin = UniPolyQn::new(vec![
            QnFrac::constant(BigRat::from_integer(delta.into())),
            QnFrac::one(),
        ]);
        self.c.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &lin) + &Self::constant(a.clone())
        })
    }

    pub fn eval(&self, k: &BigRat) -> QnFrac {
        let k = QnFrac::constant(k.clone());
        self.c
            .iter()
            .rev()
            .fold(QnFrac::zero(), |acc, a| &(&acc * &k) + a)
    }

    /// Quotient and remainder of division by a nonzero `d`.
    pub fn divrem(&self, d: &UniPolyQn) -> (UniPolyQn, UniPolyQn) {
        let dd = d.degree().expect("division by the zero polynomial");
        if self.c.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = d.lc().recip();
        let mut rem = self.c.clone();
        let mut q = vec![QnFrac::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let f = &rem[i] * &lc_inv;
            for (j, dc) in d.c.iter().enumerate() {
                rem[i - dd + j] = &rem[i - dd + j] - &(&f * dc);
            }
            q[i - dd] = f;
        }
        rem.truncate(dd);
        (Self::new(q), Self::new(rem))
    }

    /// Monic gcd by Euclid's algorithm; coefficients stay reduced.
    pub fn gcd(&self, other: &UniPolyQn) -> UniPolyQn {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }
}

impl Add for &UniPolyQn {
    type Output = UniPolyQn;
    fn add(self, rhs: &UniPolyQn) -> UniPolyQn {
        let len = self.c.len().max(rhs.c.len());
        UniPolyQn::new((0..len).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPolyQn {
    type Output = UniPolyQn;
    fn sub(self, rhs: &UniPolyQn) -> UniPolyQn {
        let len = self.c.len().max(rhs.c.len());
        UniPolyQn::new((0..len).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPolyQn {
    type Output = UniPolyQn;
    fn mul(self, rhs: &UniPolyQn) -> UniPolyQn {
        if self.is_zero() || rhs.is_zero() {
            return UniPolyQn::zero();
        }
        let mut out = vec![QnFrac::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        UniPolyQn::new(out)
    }
}

impl fmt::Display for UniPolyQn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*k")?,
                _ => write!(f, "({c})*k^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in `k` with coefficients in `Q[n]`, as a [`Poly2`].
pub(crate) fn poly_in_n(p: &UPoly) -> Poly2 {
    Poly2::from_univariate(p, Var::N)
}
