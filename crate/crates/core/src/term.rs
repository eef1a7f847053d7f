//! Hypergeometric summands and their closed forms.
//!
//! A [`HyperTerm`] is
//!
//! ```text
//! F(n, k) = z^k * p(k) * prod_i (b_i*n + c_i)_k ^ e_i / (k!)^f
//! ```
//!
//! with integer `b_i`, rational `c_i` and nonzero integer powers `e_i`. A
//! [`ClosedForm`] is `base^n * prod_j (a_j)_n ^ m_j`. The normalized summand
//! used throughout [`crate::wz`] is `F(n, k) / rhs(n)`.

use crate::algebra::{int, rat_pow, BigRat, Poly2, RatFunc2, UPoly, Var};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("denominator Pochhammer factor vanishes at n = {n}, k = {k}")]
    Pole { n: String, k: u64 },
}

/// `(n_coeff*n + offset)_k` raised to `power`; negative powers sit in the
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochFactor {
    pub n_coeff: i64,
    pub offset: BigRat,
    pub power: i32,
}

impl PochFactor {
    pub fn new(n_coeff: i64, offset: BigRat, power: i32) -> Self {
        assert!(power != 0, "Pochhammer power must be nonzero");
        PochFactor {
            n_coeff,
            offset,
            power,
        }
    }

    /// The argument `b*n + c` evaluated at `n`.
    pub fn arg_at(&self, n: &BigRat) -> BigRat {
        n * int(self.n_coeff) + &self.offset
    }

    /// The argument `b*n + c` as a polynomial.
    pub fn arg_poly(&self) -> Poly2 {
        Poly2::linear(int(self.n_coeff), BigRat::zero(), self.offset.clone())
    }
}

/// Constant multiplier `rational * sqrt(sqrt_of)`. Only the numeric layer
/// applies it; every exact computation works with the bare summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefactor {
    pub rational: BigRat,
    pub sqrt_of: BigRat,
}

impl Default for Prefactor {
    fn default() -> Self {
        Prefactor {
            rational: BigRat::one(),
            sqrt_of: BigRat::one(),
        }
    }
}

impl Prefactor {
    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.sqrt_of.is_one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperTerm {
    pub poch: Vec<PochFactor>,
    /// Power of `k!` in the denominator.
    pub fact_pow: u32,
    pub z: BigRat,
    /// Polynomial factor in `k`.
    pub p: UPoly,
    pub prefactor: Prefactor,
}

/// `base^n * prod (arg)_n ^ power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub base: BigRat,
    pub poch_n: Vec<(BigRat, i32)>,
}

impl ClosedForm {
    /// The constant function 1.
    pub fn one() -> Self {
        ClosedForm {
            base: BigRat::one(),
            poch_n: Vec::new(),
        }
    }
}

/// Rising factorial `arg (arg+1) ... (arg+count-1)`.
pub fn poch_exact(arg: &BigRat, count: u64) -> BigRat {
    let mut acc = BigRat::one();
    let mut x = arg.clone();
    for _ in 0..count {
        if x.is_zero() {
            return BigRat::zero();
        }
        acc *= &x;
        x += BigRat::one();
    }
    acc
}

/// A rational function kept as `constant * prod factor^power`.
///
/// [`crate::gosper`] works on the factors directly; everything else
/// multiplies them out with [`FactoredRatio::to_ratfunc`].
#[derive(Debug, Clone)]
pub struct FactoredRatio {
    pub constant: BigRat,
    pub factors: Vec<(Poly2, i32)>,
}

impl FactoredRatio {
    pub fn to_ratfunc(&self) -> RatFunc2 {
        let mut num = Poly2::constant(self.constant.clone());
        let mut den = Poly2::one();
        for (f, e) in &self.factors {
            let pw = f.pow(e.unsigned_abs());
            if *e > 0 {
                num = &num * &pw;
            } else {
                den = &den * &pw;
            }
        }
        RatFunc2::new(num, den).expect("factors are nonzero polynomials")
    }

    /// Same value with every factor primitive, constant factors folded into
    /// the constant, and equal factors merged (cancelled when the powers sum
    /// to zero).
    pub fn normalized(&self) -> FactoredRatio {
        let mut constant = self.constant.clone();
        let mut merged: Vec<(Poly2, i32)> = Vec::new();
        for (f, e) in &self.factors {
            if let Some(c) = f.as_constant() {
                constant *= rat_pow(&c, *e as i64);
                continue;
            }
            constant *= rat_pow(&f.content(), *e as i64);
            let g = f.primitive();
            match merged.iter_mut().find(|(h, _)| *h == g) {
                Some(slot) => slot.1 += e,
                None => merged.push((g, *e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        FactoredRatio {
            constant,
            factors: merged,
        }
    }

    pub fn eval(&self, n: &BigRat, k: &BigRat) -> Option<BigRat> {
        let mut acc = self.constant.clone();
        for (f, e) in &self.factors {
            let v = f.eval(n, k);
            if v.is_zero() {
                if *e < 0 {
                    return None;
                }
                return Some(BigRat::zero());
            }
            acc *= rat_pow(&v, *e as i64);
        }
        Some(acc)
    }
}

impl HyperTerm {
    /// Exact summand at rational `n` and integer `k`, without the prefactor.
    pub fn value_at(&self, n: &BigRat, k: u64) -> Result<BigRat, TermError> {
        let mut acc = rat_pow(&self.z, k as i64) * self.p.eval(&int(k as i64));
        let mut fact = BigRat::one();
        for i in 1..=k {
            fact *= int(i as i64);
        }
        acc /= rat_pow(&fact, self.fact_pow as i64);
        let mut zero = false;
        for f in &self.poch {
            let v = poch_exact(&f.arg_at(n), k);
            if v.is_zero() {
                if f.power < 0 {
                    return Err(TermError::Pole {
                        n: crate::algebra::fmt_rat(n),
                        k,
                    });
                }
                zero = true;
                continue;
            }
            acc *= rat_pow(&v, f.power as i64);
        }
        Ok(if zero { BigRat::zero() } else { acc })
    }

    /// Summand values for `k = 0..=upto`, computed factor by factor with
    /// running products; a vanishing numerator factor never divides.
    pub fn row(&self, n: &BigRat, upto: u64) -> Result<Vec<BigRat>, TermError> {
        let args: Vec<BigRat> = self.poch.iter().map(|f| f.arg_at(n)).collect();
        let mut running: Vec<BigRat> = vec![BigRat::one(); self.poch.len()];
        let mut zpow = BigRat::one();
        let mut fact = BigRat::one();
        let mut out = Vec::with_capacity(upto as usize + 1);
        for k in 0..=upto {
            if k > 0 {
                let km1 = int(k as i64 - 1);
                for (r, a) in running.iter_mut().zip(&args) {
                    *r *= a + &km1;
                }
                zpow *= &self.z;
                fact *= int(k as i64);
            }
            let mut v = &zpow * self.p.eval(&int(k as i64)) / rat_pow(&fact, self.fact_pow as i64);
            let mut zero = false;
            for (r, f) in running.iter().zip(&self.poch) {
                if r.is_zero() {
                    if f.power < 0 {
                        return Err(TermError::Pole {
                            n: crate::algebra::fmt_rat(n),
                            k,
                        });
                    }
                    zero = true;
                } else if !zero {
                    v *= rat_pow(r, f.power as i64);
                }
            }
            out.push(if zero { BigRat::zero() } else { v });
        }
        Ok(out)
    }

    /// `F(n, k+1) / F(n, k)` in factored form.
    pub fn k_ratio_factors(&self) -> FactoredRatio {
        let mut factors = Vec::new();
        for f in &self.poch {
            factors.push((&f.arg_poly() + &Poly2::k(), f.power));
        }
        if self.fact_pow > 0 {
            factors.push((&Poly2::k() + &Poly2::one(), -(self.fact_pow as i32)));
        }
        if !self.p.is_constant() {
            let pk = Poly2::from_univariate(&self.p, Var::K);
            factors.push((pk.shift(Var::K, 1), 1));
            factors.push((pk, -1));
        }
        FactoredRatio {
            constant: self.z.clone(),
            factors,
        }
    }

    /// `F^(n+1, k) / F^(n, k)` for the normalized summand `F^ = F / rhs`, in
    /// factored form.
    pub fn n_ratio_factors(&self, rhs: &ClosedForm) -> FactoredRatio {
        let mut factors = Vec::new();
        let k = Poly2::k();
        for f in &self.poch {
            let a = f.arg_poly();
            let b = f.n_coeff;
            if b > 0 {
                // (a+b)_k / (a)_k = prod_{j<b} (a+k+j) / (a+j)
                for j in 0..b {
                    let aj = &a + &Poly2::constant(int(j));
                    factors.push((&aj + &k, f.power));
                    factors.push((aj, -f.power));
                }
            } else if b < 0 {
                // (a-m)_k / (a)_k = prod_{j=1..m} (a-j) / (a+k-j)
                for j in 1..=(-b) {
                    let aj = &a - &Poly2::constant(int(j));
                    factors.push((&aj + &k, -f.power));
                    factors.push((aj, f.power));
                }
            }
        }
        for (arg, pw) in &rhs.poch_n {
            factors.push((&Poly2::n() + &Poly2::constant(arg.clone()), -pw));
        }
        FactoredRatio {
            constant: rhs.base.recip(),
            factors,
        }
    }

    /// Largest `k` with a possibly nonzero summand at `n`, or `None` when the
    /// series does not terminate.
    pub fn termination_bound(&self, n: u64) -> Option<u64> {
        let n = int(n as i64);
        self.poch
            .iter()
            .filter(|f| f.power > 0)
            .filter_map(|f| {
                let v = f.arg_at(&n);
                (v.is_integer() && !v.is_positive()).then(|| (-v).to_integer())
            })
            .filter_map(|v| u64::try_from(&v).ok())
            .min()
    }

    /// Factor lists after substituting the rational `t` for `n`.
    pub fn specialize(&self, t: &BigRat) -> SpecializedTerm {
        let mut net: BTreeMap<BigRat, i64> = BTreeMap::new();
        for f in &self.poch {
            *net.entry(f.arg_at(t)).or_default() += f.power as i64;
        }
        let mut fact_pow = self.fact_pow as i64;
        if let Some(e) = net.remove(&BigRat::one()) {
            fact_pow -= e;
        }
        let mut num_args = Vec::new();
        let mut den_args = Vec::new();
        for (a, e) in net {
            let target = if e > 0 { &mut num_args } else { &mut den_args };
            for _ in 0..e.unsigned_abs() {
                target.push(a.clone());
            }
        }
        SpecializedTerm {
            num_args,
            den_args,
            fact_pow,
            z: self.z.clone(),
            p: self.p.clone(),
        }
    }
}

/// A summand with `n` replaced by a number: `(1)_k` factors are folded into
/// the factorial power and equal numerator/denominator arguments cancel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedTerm {
    pub num_args: Vec<BigRat>,
    pub den_args: Vec<BigRat>,
    pub fact_pow: i64,
    pub z: BigRat,
    pub p: UPoly,
}

/// Exact summand value; see [`HyperTerm::value_at`].
pub fn term_value(t: &HyperTerm, n: u64, k: u64) -> Result<BigRat, TermError> {
    t.value_at(&int(n as i64), k)
}

pub fn shift_quotient_k(t: &HyperTerm) -> RatFunc2 {
    t.k_ratio_factors().to_ratfunc()
}

pub fn shift_quotient_n(t: &HyperTerm, rhs: &ClosedForm) -> RatFunc2 {
    t.n_ratio_factors(rhs).to_ratfunc()
}

pub fn termination_bound(t: &HyperTerm, n: u64) -> Option<u64> {
    t.termination_bound(n)
}

pub fn rhs_exact(rhs: &ClosedForm, n: u64) -> BigRat {
    let mut acc = rat_pow(&rhs.base, n as i64);
    for (a, pw) in &rhs.poch_n {
        acc *= rat_pow(&poch_exact(a, n), *pw as i64);
    }
    acc
}

impl Default for HyperTerm {
    /// The bare term `1` (no factors, `z = 1`, `p = 1`).
    fn default() -> Self {
        HyperTerm {
            poch: Vec::new(),
            fact_pow: 0,
            z: BigRat::one(),
            p: UPoly::one(),
            prefactor: Prefactor::default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn four_k_plus_one() -> UPoly {
        UPoly::new(vec![int(1), int(4)])
    }

    fn theorem1() -> (HyperTerm, ClosedForm) {
        let t = HyperTerm {
            poch: vec![
                PochFactor::new(-1, int(0), 2),
                PochFactor::new(0, rat(1, 2), 1),
                PochFactor::new(1, rat(3, 2), -2),
            ],
            fact_pow: 1,
            z: int(-1),
            p: four_k_plus_one(),
            prefactor: Prefactor::default(),
        };
        let rhs = ClosedForm {
            base: rat(1, 4),
            poch_n: vec![(rat(3, 2), 2), (rat(5, 4), -1), (rat(3, 4), -1)],
        };
        (t, rhs)
    }

    fn ramanujan() -> HyperTerm {
        HyperTerm {
            poch: vec![PochFactor::new(0, rat(1, 2), 3)],
            fact_pow: 3,
            z: int(-1),
            p: four_k_plus_one(),
            prefactor: Prefactor::default(),
        }
    }

    #[test]
    fn poch_examples() {
        assert_eq!(poch_exact(&rat(7, 3), 0), int(1));
        assert_eq!(poch_exact(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(poch_exact(&int(0), 2), int(0));
        assert_eq!(poch_exact(&int(-3), 3), int(-6));
        assert_eq!(poch_exact(&int(-3), 4), int(0));
    }

    #[test]
    fn value_examples() {
        let (t, _) = theorem1();
        assert_eq!(term_value(&t, 1, 0).unwrap(), int(1));
        assert_eq!(term_value(&t, 1, 1).unwrap(), rat(-2, 5));
        assert_eq!(term_value(&t, 1, 2).unwrap(), int(0));
        assert_eq!(term_value(&ramanujan(), 0, 1).unwrap(), rat(-5, 8));
    }

    #[test]
    fn row_matches_value() {
        let (t, _) = theorem1();
        let row = t.row(&int(3), 6).unwrap();
        for (k, v) in row.iter().enumerate() {
            assert_eq!(v, &term_value(&t, 3, k as u64).unwrap());
        }
    }

    #[test]
    fn pole_is_reported() {
        let t = HyperTerm {
            poch: vec![PochFactor::new(-1, int(0), -1)],
            ..HyperTerm::default()
        };
        assert!(matches!(
            term_value(&t, 2, 3),
            Err(TermError::Pole { k: 3, .. })
        ));
        assert!(t.row(&int(2), 3).is_err());
    }

    #[test]
    fn k_quotients() {
        let bare = HyperTerm {
            z: rat(-3, 7),
            ..HyperTerm::default()
        };
        assert!(shift_quotient_k(&bare).equals(&RatFunc2::constant(rat(-3, 7))));

        let k = Poly2::k();
        let c = |v: BigRat| Poly2::constant(v);
        let r = shift_quotient_k(&ramanujan());
        let num = -(&(&(&k.scale(&int(4)) + &c(int(5))) * &(&k + &c(rat(1, 2))).pow(3)));
        let den = &(&k.scale(&int(4)) + &c(int(1))) * &(&k + &c(int(1))).pow(3);
        assert!(r.equals(&RatFunc2::new(num, den).unwrap()));
        let v2 = term_value(&ramanujan(), 0, 2).unwrap();
        let v3 = term_value(&ramanujan(), 0, 3).unwrap();
        assert_eq!(r.eval(&int(0), &int(2)).unwrap(), v3 / v2);

        let (t, _) = theorem1();
        let n = Poly2::n();
        let num =
            -(&(&(&(&k.scale(&int(4)) + &c(int(5))) * &(&k - &n).pow(2)) * &(&k + &c(rat(1, 2)))));
        let den = &(&(&k.scale(&int(4)) + &c(int(1))) * &(&k + &c(int(1))))
            * &(&(&n + &k) + &c(rat(3, 2))).pow(2);
        let q = shift_quotient_k(&t);
        assert!(q.equals(&RatFunc2::new(num, den).unwrap()));
        let ratio = term_value(&t, 3, 2).unwrap() / term_value(&t, 3, 1).unwrap();
        assert_eq!(q.eval(&int(3), &int(1)).unwrap(), ratio);
    }

    #[test]
    fn n_quotients() {
        let one = ClosedForm::one();
        let flat = HyperTerm::default();
        assert!(shift_quotient_n(&flat, &one).equals(&RatFunc2::one()));

        let k = Poly2::k();
        let n = Poly2::n();
        let c = |v: BigRat| Poly2::constant(v);

        let up = HyperTerm {
            poch: vec![PochFactor::new(1, rat(3, 2), 1)],
            ..HyperTerm::default()
        };
        let a = &n + &c(rat(3, 2));
        let expect = RatFunc2::new(&a + &k, a.clone()).unwrap();
        let q = shift_quotient_n(&up, &one);
        assert!(q.equals(&expect));
        let v = term_value(&up, 3, 3).unwrap() / term_value(&up, 2, 3).unwrap();
        assert_eq!(q.eval(&int(2), &int(3)).unwrap(), v);

        let down = HyperTerm {
            poch: vec![PochFactor::new(-1, int(0), 1)],
            ..HyperTerm::default()
        };
        let m = &(-&n) - &c(int(1));
        let expect = RatFunc2::new(m.clone(), &m + &k).unwrap();
        assert!(shift_quotient_n(&down, &one).equals(&expect));
    }

    #[test]
    fn termination() {
        let (t, _) = theorem1();
        assert_eq!(termination_bound(&t, 5), Some(5));
        assert_eq!(termination_bound(&t, 0), Some(0));
        assert_eq!(termination_bound(&ramanujan(), 5), None);
        let t3 = HyperTerm {
            poch: vec![
                PochFactor::new(-2, int(0), 1),
                PochFactor::new(-1, rat(1, 4), 1),
            ],
            ..HyperTerm::default()
        };
        assert_eq!(termination_bound(&t3, 5), Some(10));
    }

    #[test]
    fn rhs_examples() {
        let (_, rhs) = theorem1();
        assert_eq!(rhs_exact(&rhs, 0), int(1));
        assert_eq!(rhs_exact(&rhs, 1), rat(3, 5));
        let z = ClosedForm {
            base: int(1),
            poch_n: vec![(rat(3, 2), 1), (int(1), -1)],
        };
        // (3/2)(5/2) / 2!
        assert_eq!(rhs_exact(&z, 2), rat(15, 8));
    }

    #[test]
    fn theorem1_sum_at_one() {
        let (t, rhs) = theorem1();
        let s: BigRat = t.row(&int(1), 1).unwrap().into_iter().sum();
        assert_eq!(s, rhs_exact(&rhs, 1));
    }

    #[test]
    fn specialization_folds_ones() {
        let (t, _) = theorem1();
        let s = t.specialize(&rat(-1, 2));
        assert_eq!(s.num_args, vec![rat(1, 2); 3]);
        assert!(s.den_args.is_empty());
        assert_eq!(s.fact_pow, 3);
        assert_eq!(s, ramanujan().specialize(&rat(-1, 2)));
    }
}
