use super::{AlgebraError, BigRat, Poly2, Var};
use num_traits::{One, Zero};
use std::fmt;

/// Quotient of two [`Poly2`], kept unreduced.
///
/// Two rational functions are equal when `a.num * b.den - b.num * a.den`
/// is the zero polynomial; see [`RatFunc2::equals`].
#[derive(Clone, Debug)]
pub struct RatFunc2 {
    num: Poly2,
    den: Poly2,
}

impl RatFunc2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RatFunc2 { num, den }.tidy())
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFunc2 {
            num: p,
            den: Poly2::one(),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(Poly2::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn into_parts(self) -> (Poly2, Poly2) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Semantic equality by cross-multiplication.
    pub fn equals(&self, other: &RatFunc2) -> bool {
        self.cross_residual(other).is_zero()
    }

    /// `self.num * other.den - other.num * self.den`.
    pub fn cross_residual(&self, other: &RatFunc2) -> Poly2 {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    pub fn add(&self, other: &RatFunc2) -> RatFunc2 {
        if self.den == other.den {
            return RatFunc2 {
                num: &self.num + &other.num,
                den: self.den.clone(),
            }
            .tidy();
        }
        RatFunc2 {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
        .tidy()
    }

    pub fn sub(&self, other: &RatFunc2) -> RatFunc2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc2 {
        RatFunc2 {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc2) -> RatFunc2 {
        RatFunc2 {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
        .tidy()
    }

    pub fn div(&self, other: &RatFunc2) -> Result<RatFunc2, AlgebraError> {
        if other.num.is_zero() {
            return Err(AlgebraError::DivisionByZeroFunction);
        }
        Ok(RatFunc2 {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        }
        .tidy())
    }

    pub fn scale(&self, c: &BigRat) -> RatFunc2 {
        RatFunc2 {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplies numerator and denominator by the same nonzero polynomial.
    /// The value is unchanged.
    pub fn expand_by(&self, p: &Poly2) -> RatFunc2 {
        assert!(!p.is_zero(), "expand_by needs a nonzero polynomial");
        RatFunc2 {
            num: &self.num * p,
            den: &self.den * p,
        }
    }

    pub fn shift(&self, var: Var, delta: i64) -> RatFunc2 {
        RatFunc2 {
            num: self.num.shift(var, delta),
            den: self.den.shift(var, delta),
        }
    }

    /// Substitutes a constant for one variable; `None` if the denominator
    /// becomes identically zero.
    pub fn subs(&self, var: Var, value: &BigRat) -> Option<RatFunc2> {
        let den = self.den.subs(var, value);
        if den.is_zero() {
            return None;
        }
        Some(RatFunc2 {
            num: self.num.subs(var, value),
            den,
        })
    }

    /// Exact value at a point; `None` where the denominator vanishes.
    pub fn eval(&self, n: &BigRat, k: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(n, k);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(n, k) / d)
    }

    /// Pulls rational content out of both halves so the denominator is a
    /// primitive integer polynomial. Never changes the value.
    fn tidy(self) -> RatFunc2 {
        if self.num.is_zero() {
            return RatFunc2 {
                num: Poly2::zero(),
                den: Poly2::one(),
            };
        }
        let c = self.den.content();
        if c.is_one() || c.is_zero() {
            return self;
        }
        let inv = c.recip();
        RatFunc2 {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
