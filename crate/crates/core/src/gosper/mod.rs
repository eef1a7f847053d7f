//! Gosper's algorithm over `Q(n)` and WZ certificate synthesis.
//!
//! For a WZ identity the telescoped quantity is
//! `H(k) = F^(n+1, k) - F^(n, k) = F^(n, k) (s(k) - 1)` with `s` the
//! `n`-shift quotient. Its `k`-ratio is rational in `k` over `Q(n)`; if `H`
//! has a hypergeometric antidifference `G` then `R = G / F^` is a
//! certificate.
//!
//! A term ratio is written `t(k+1)/t(k) = (p(k+1)/p(k)) (q(k)/r(k))` with
//! `gcd(q(k), r(k+j)) = 1` for every `j >= 0`. Then `t` is Gosper-summable
//! iff some polynomial `x` solves `q(k) x(k+1) - r(k-1) x(k) = p(k)`, and
//! `T(k) = r(k-1) x(k) / p(k) t(k)` satisfies `T(k+1) - T(k) = t(k)`.
//!
//! Ratios are kept as lists of factors primitive over `Q[n]` plus a unit of
//! `Q(n)`. The shift-quotient ratios of the catalog terms are products of
//! many linear factors and one dense polynomial, so nearly all of the
//! dispersion work happens factor by factor and never expands a product.

mod linsolve;
mod qn;

pub use qn::{QnFrac, UniPolyQn};

use crate::algebra::{int, rat, rat_to_f64, BigRat, Poly2, RatFunc2, UPoly, Var};
use crate::term::FactoredRatio;
use crate::wz::{boundary_vanishes, wz_residual, WZIdentity, WzError};
use num_traits::{One, Signed, Zero};
use qn::poly_in_n;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GosperError {
    #[error("s(n, k) - 1 vanishes identically: the summand does not depend on n")]
    DegenerateRatio,
    #[error(transparent)]
    Wz(#[from] WzError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GosperStatus {
    Summable,
    NotSummable,
}

#[derive(Debug, Clone)]
pub struct GosperResult {
    pub status: GosperStatus,
    pub certificate: Option<RatFunc2>,
    /// Degree bound for `x`; negative when no polynomial solution can exist.
    pub degree_bound_used: i64,
    pub dispersion_set: Vec<u64>,
}

/// `(p, q, r)` with `ratio = (p(k+1)/p(k)) (q(k)/r(k))`.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub p: UniPolyQn,
    pub q: UniPolyQn,
    pub r: UniPolyQn,
    pub dispersion_set: Vec<u64>,
}

impl NormalForm {
    /// Re-checks `gcd(q(k), r(k+j)) = 1` for every `j` in the dispersion
    /// set, at a generic specialization of `n`. A common factor over `Q(n)`
    /// would survive the specialization.
    pub fn gcd_condition_holds(&self) -> bool {
        let n0 = generic_point();
        let q0 = specialize(&self.q.to_poly2().0, &n0);
        let r0 = specialize(&self.r.to_poly2().0, &n0);
        self.dispersion_set
            .iter()
            .all(|&j| q0.gcd(&r0.shift(&int(j as i64))).is_constant())
    }
}

/// A hypergeometric antidifference found by [`gosper`].
#[derive(Debug, Clone)]
pub struct Antidifference {
    pub normal_form: NormalForm,
    pub x: UniPolyQn,
    pub degree_bound: i64,
    /// `T(k) / t(k) = r(k-1) x(k) / p(k)`.
    pub ratio: RatFunc2,
}

/// Where `n` is specialized for dispersion candidates. Any rational that
/// avoids the finitely many bad values works.
fn generic_point() -> BigRat {
    rat(3141, 2718)
}

fn specialize(p: &Poly2, n0: &BigRat) -> UPoly {
    p.subs(Var::N, n0)
        .as_univariate(Var::K)
        .expect("free of n after substitution")
}

/// Splits `f` into a unit of `Q(n)` times a part that is primitive over
/// `Q[n]` and mentions `k`. The part is `None` when `f` is free of `k`.
fn split_unit(f: &Poly2) -> (QnFrac, Option<Poly2>) {
    if !f.mentions(Var::K) {
        let u = f.as_univariate(Var::N).expect("free of k");
        return (QnFrac::from_poly(u), None);
    }
    let coeffs = f.coeffs_in_k();
    let g = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .fold(UPoly::zero(), |acc, c| acc.gcd(c));
    let (rest, unit) = if g.is_constant() {
        (f.clone(), QnFrac::one())
    } else {
        let rows: Vec<UPoly> = coeffs.iter().map(|c| c.div_exact(&g).unwrap()).collect();
        (Poly2::from_coeffs_in_k(&rows), QnFrac::from_poly(g))
    };
    let c = rest.content();
    (&unit * &QnFrac::constant(c), Some(rest.primitive()))
}

/// `unit * prod num / prod den`, every factor primitive and mentioning `k`.
#[derive(Debug, Clone)]
struct Factored {
    unit: QnFrac,
    num: Vec<Poly2>,
    den: Vec<Poly2>,
}

impl Factored {
    fn new(unit: QnFrac) -> Self {
        Factored {
            unit,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    fn from_ratio(r: &FactoredRatio) -> Self {
        let mut f = Factored::new(QnFrac::constant(r.constant.clone()));
        for (p, e) in &r.factors {
            f.push(p, *e);
        }
        f
    }

    fn push(&mut self, f: &Poly2, e: i32) {
        if e == 0 {
            return;
        }
        let (u, g) = split_unit(f);
        self.unit = &self.unit * &u.pow(e);
        let Some(g) = g else {
            return;
        };
        for _ in 0..e.unsigned_abs() {
            let (same, other) = if e > 0 {
                (&mut self.num, &mut self.den)
            } else {
                (&mut self.den, &mut self.num)
            };
            match other.iter().position(|h| *h == g) {
                Some(i) => {
                    other.swap_remove(i);
                }
                None => same.push(g.clone()),
            }
        }
    }

    fn to_ratfunc(&self) -> RatFunc2 {
        let num = self
            .num
            .iter()
            .fold(poly_in_n(self.unit.num()), |acc, f| &acc * f);
        let den = self
            .den
            .iter()
            .fold(poly_in_n(self.unit.den()), |acc, f| &acc * f);
        RatFunc2::new(num, den).expect("nonzero factors")
    }
}

/// Fujiwara's bound on the absolute values of the complex roots.
fn root_bound(p: &UPoly) -> f64 {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return 0.0;
    }
    let lc = rat_to_f64(&p.lc()).abs();
    let mut best: f64 = 0.0;
    for i in 0..d {
        let mut r = rat_to_f64(&p.coeff(i)).abs() / lc;
        if i == 0 {
            r /= 2.0;
        }
        best = best.max(r.powf(1.0 / (d - i) as f64));
    }
    2.0 * best
}

/// Integers `j >= 0` for which `a(k)` and `b(k+j)` have a common root once
/// `n` is specialized. A superset of the true dispersion candidates.
fn shift_candidates(a: &Poly2, b: &Poly2, n0: &BigRat) -> Vec<u64> {
    let a0 = specialize(a, n0);
    let b0 = specialize(b, n0);
    let (Some(da), Some(db)) = (a0.degree(), b0.degree()) else {
        return Vec::new();
    };
    if da == 0 || db == 0 {
        return Vec::new();
    }
    let bound = (root_bound(&a0) + root_bound(&b0)).ceil().min(1e6) as u64;
    let root = |p: &UPoly| -(p.coeff(0) / p.coeff(1));
    (0..=bound)
        .filter(|&j| {
            let j = int(j as i64);
            if db == 1 {
                a0.eval(&(root(&b0) - j)).is_zero()
            } else if da == 1 {
                b0.eval(&(root(&a0) + j)).is_zero()
            } else {
                !a0.gcd(&b0.shift(&j)).is_constant()
            }
        })
        .collect()
}

/// Coefficient of the top power of `k`, as a polynomial in `n`.
fn lead_in_k(p: &Poly2) -> Poly2 {
    let c = p.coeffs_in_k();
    poly_in_n(c.last().expect("nonzero polynomial"))
}

/// `gcd(a(k), b(k+j))` over `Q(n)`, primitive, or `None` if it is 1.
fn exact_shift_gcd(a: &Poly2, b: &Poly2, j: u64) -> Option<Poly2> {
    let bj = b.shift(Var::K, j as i64);
    let da = a.degree(Var::K)?;
    let db = bj.degree(Var::K)?;
    if da == db {
        if a * &lead_in_k(&bj) == &bj * &lead_in_k(a) {
            return Some(a.clone());
        }
        if da == 1 {
            return None;
        }
    }
    if db == 1 {
        return a.div_exact(&bj).map(|_| bj);
    }
    if da == 1 {
        return bj.div_exact(a).map(|_| a.clone());
    }
    let g = UniPolyQn::from_poly2(a).gcd(&UniPolyQn::from_poly2(&bj));
    if g.degree()? == 0 {
        return None;
    }
    split_unit(&g.to_poly2().0).1
}

/// Gosper's normal form on factor lists.
#[derive(Debug, Clone)]
struct Decomposition {
    unit: QnFrac,
    q: Vec<Poly2>,
    r: Vec<Poly2>,
    p: Vec<Poly2>,
    dispersion: BTreeSet<u64>,
}

// q and r are both rewritten in the pair loop, hence the index loops
#[allow(clippy::needless_range_loop, clippy::while_let_loop)]
fn decompose(f: Factored) -> Decomposition {
    let n0 = generic_point();
    let mut unit = f.unit;
    let mut q: Vec<Option<Poly2>> = f.num.into_iter().map(Some).collect();
    let mut r: Vec<Option<Poly2>> = f.den.into_iter().map(Some).collect();
    let mut p = Vec::new();
    let mut dispersion = BTreeSet::new();
    // Dividing out common parts only shrinks factors, so a pair that is
    // coprime for every shift stays so; one pass over the pairs suffices.
    for i in 0..q.len() {
        for l in 0..r.len() {
            loop {
                let (Some(a), Some(b)) = (q[i].clone(), r[l].clone()) else {
                    break;
                };
                let found = shift_candidates(&a, &b, &n0)
                    .into_iter()
                    .find_map(|j| exact_shift_gcd(&a, &b, j).map(|g| (j, g)));
                let Some((j, g)) = found else {
                    break;
                };
                let a_rest = a.div_exact(&g).expect("gcd divides");
                let b_rest = b
                    .div_exact(&g.shift(Var::K, -(j as i64)))
                    .expect("shifted gcd divides");
                for s in 1..=j {
                    p.push(g.shift(Var::K, -(s as i64)));
                }
                dispersion.insert(j);
                let (ua, ra) = split_unit(&a_rest);
                let (ub, rb) = split_unit(&b_rest);
                unit = &(&unit * &ua) / &ub;
                q[i] = ra;
                r[l] = rb;
            }
        }
    }
    Decomposition {
        unit,
        q: q.into_iter().flatten().collect(),
        r: r.into_iter().flatten().collect(),
        p,
        dispersion,
    }
}

fn product(fs: &[Poly2]) -> Poly2 {
    fs.iter().fold(Poly2::one(), |acc, f| &acc * f)
}

fn upoly_from(p: &Poly2) -> UniPolyQn {
    UniPolyQn::from_poly2(p)
}

impl Decomposition {
    fn normal_form(&self) -> NormalForm {
        NormalForm {
            p: upoly_from(&product(&self.p)),
            q: upoly_from(&product(&self.q)).scale(&self.unit),
            r: upoly_from(&product(&self.r)),
            dispersion_set: self.dispersion.iter().copied().collect(),
        }
    }

    /// `(a, b1, c)` with polynomial coefficients such that the Gosper
    /// equation reads `a x(k+1) - b1 x(k) = c`.
    fn equation(&self) -> (Poly2, Poly2, Poly2) {
        let un = poly_in_n(self.unit.num());
        let ud = poly_in_n(self.unit.den());
        let a = &un * &product(&self.q);
        let rs: Vec<Poly2> = self.r.iter().map(|f| f.shift(Var::K, -1)).collect();
        let b1 = &ud * &product(&rs);
        let c = &ud * &product(&self.p);
        (a, b1, c)
    }
}

fn deg_k(p: &Poly2) -> Option<i64> {
    p.degree(Var::K).map(|d| d as i64)
}

/// Upper bound on `deg x` for `a x(k+1) - b1 x(k) = c` from the leading
/// coefficients of `a + b1` and `a - b1`.
fn degree_bound(a: &Poly2, b1: &Poly2, c: &Poly2) -> i64 {
    let sp = a + b1;
    let sm = a - b1;
    let dc = deg_k(c).unwrap_or(-1);
    let (dp, dm) = (deg_k(&sp), deg_k(&sm));
    if let Some(m) = dm {
        if dp.is_none_or(|p| m >= p) {
            return dc - m;
        }
    }
    let Some(d) = dp else {
        return -1;
    };
    let mut bound = dc - d + 1;
    let lead = sp.coeffs_in_k()[d as usize].clone();
    let next = if d >= 1 {
        sm.coeffs_in_k()
            .get(d as usize - 1)
            .cloned()
            .unwrap_or_default()
    } else {
        UPoly::zero()
    };
    // deg x = -2 [k^(d-1)](a - b1) / lc(a + b1) lets the top terms cancel
    let (quo, rem) = next.scale(&int(-2)).divrem(&lead);
    if rem.is_zero() && quo.is_constant() {
        let d0 = quo.coeff(0);
        if d0.is_integer() && !d0.is_negative() {
            if let Ok(d0) = i64::try_from(d0.to_integer()) {
                bound = bound.max(d0);
            }
        }
    }
    bound
}

#[derive(Debug, Clone)]
struct Solution {
    x: UniPolyQn,
    homogeneous: Vec<UniPolyQn>,
}

fn ensure_len(v: &mut Vec<UPoly>, len: usize) {
    if v.len() < len {
        v.resize(len, UPoly::zero());
    }
}

/// Solves `a x(k+1) - b1 x(k) = c` for a polynomial `x` over `Q(n)` by
/// undetermined coefficients.
fn solve_equation(a: &Poly2, b1: &Poly2, c: &Poly2) -> (i64, Option<Solution>) {
    let bound = degree_bound(a, b1, c);
    if bound < 0 {
        return (bound, None);
    }
    let d = bound as usize;
    let k = Poly2::k();
    let k1 = &k + &Poly2::one();
    let mut columns: Vec<Vec<UPoly>> = Vec::with_capacity(d + 2);
    let mut kp = Poly2::one();
    let mut k1p = Poly2::one();
    for i in 0..=d {
        if i > 0 {
            kp = &kp * &k;
            k1p = &k1p * &k1;
        }
        columns.push((&(a * &k1p) - &(b1 * &kp)).coeffs_in_k());
    }
    columns.push((-c).coeffs_in_k());
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    for col in columns.iter_mut() {
        ensure_len(col, rows);
    }
    let matrix: Vec<Vec<UPoly>> = (0..rows)
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect();
    let t = d + 1;
    let basis = linsolve::nullspace(matrix, d + 2);
    let Some((_, particular)) = basis.iter().find(|(free, _)| *free == t) else {
        return (bound, None);
    };
    let to_poly = |v: &[QnFrac]| UniPolyQn::new(v[..=d].to_vec());
    let x = to_poly(particular);
    let homogeneous = basis
        .iter()
        .filter(|(free, _)| *free != t)
        .map(|(_, v)| to_poly(v))
        .collect();

    // exact check of the solution
    let (xp, xden) = x.to_poly2();
    let lhs = &(a * &xp.shift(Var::K, 1)) - &(b1 * &xp);
    let ok = (&lhs - &(c * &poly_in_n(&xden))).is_zero();
    debug_assert!(ok, "linear solve produced a non-solution");
    if !ok {
        return (bound, None);
    }
    (bound, Some(Solution { x, homogeneous }))
}

/// Collects `constant * prod num / prod den` with primitive factors,
/// cancelling equal ones as they arrive.
struct Product {
    constant: BigRat,
    num: Vec<Poly2>,
    den: Vec<Poly2>,
}

impl Product {
    fn new() -> Self {
        Product {
            constant: BigRat::one(),
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    fn mul(&mut self, f: &Poly2, e: i32) {
        let (u, g) = split_unit(f);
        debug_assert!(u.den().is_constant());
        for part in [Some(poly_in_n(u.num())), g].into_iter().flatten() {
            if let Some(c) = part.as_constant() {
                self.constant *= crate::algebra::rat_pow(&c, e as i64);
                continue;
            }
            self.constant *= crate::algebra::rat_pow(&part.content(), e as i64);
            let h = part.primitive();
            for _ in 0..e.unsigned_abs() {
                let (same, other) = if e > 0 {
                    (&mut self.num, &mut self.den)
                } else {
                    (&mut self.den, &mut self.num)
                };
                match other.iter().position(|x| *x == h) {
                    Some(i) => {
                        other.swap_remove(i);
                    }
                    None => same.push(h.clone()),
                }
            }
        }
    }

    fn finish(mut self) -> RatFunc2 {
        // a composite numerator factor may still hide a denominator factor
        for f in self.num.iter_mut() {
            let mut i = 0;
            while i < self.den.len() {
                match f.div_exact(&self.den[i]) {
                    Some(quo) => {
                        *f = quo;
                        self.den.swap_remove(i);
                    }
                    None => i += 1,
                }
            }
        }
        let num = self
            .num
            .iter()
            .fold(Poly2::constant(self.constant.clone()), |acc, f| &acc * f);
        RatFunc2::new(num, product(&self.den)).expect("nonzero factors")
    }
}

/// `r(k-1) x(k) / p(k)`, times `extra` factors.
fn antidifference_ratio(dec: &Decomposition, x: &UniPolyQn, extra: &[(Poly2, i32)]) -> RatFunc2 {
    let mut prod = Product::new();
    for f in &dec.r {
        prod.mul(&f.shift(Var::K, -1), 1);
    }
    for f in &dec.p {
        prod.mul(f, -1);
    }
    let (xp, xden) = x.to_poly2();
    prod.mul(&xp, 1);
    prod.mul(&poly_in_n(&xden), -1);
    for (f, e) in extra {
        prod.mul(f, *e);
    }
    prod.finish()
}

/// Gosper's normal form of a rational function of `k` over `Q(n)`.
/// Panics on the zero function.
pub fn gosper_normal_form(ratio: &RatFunc2) -> NormalForm {
    assert!(!ratio.is_zero(), "normal form of the zero ratio");
    let mut f = Factored::new(QnFrac::one());
    f.push(ratio.num(), 1);
    f.push(ratio.den(), -1);
    decompose(f).normal_form()
}

/// A polynomial `f` with `q(k) f(k+1) - r(k-1) f(k) = p(k)`, if one exists.
pub fn gosper_solve(p: &UniPolyQn, q: &UniPolyQn, r: &UniPolyQn) -> Option<UniPolyQn> {
    let (pp, pd) = p.to_poly2();
    let (qp, qd) = q.to_poly2();
    let (rp, rd) = r.to_poly2();
    let (pd, qd, rd) = (poly_in_n(&pd), poly_in_n(&qd), poly_in_n(&rd));
    // clear all denominators at once
    let a = &(&qp * &rd) * &pd;
    let b1 = &(&rp.shift(Var::K, -1) * &qd) * &pd;
    let c = &(&pp * &qd) * &rd;
    solve_equation(&a, &b1, &c).1.map(|s| s.x)
}

/// Gosper's algorithm for a term with the given `k`-ratio.
pub fn gosper(ratio: &RatFunc2) -> Option<Antidifference> {
    assert!(!ratio.is_zero(), "Gosper on the zero ratio");
    let mut f = Factored::new(QnFrac::one());
    f.push(ratio.num(), 1);
    f.push(ratio.den(), -1);
    let dec = decompose(f);
    let (a, b1, c) = dec.equation();
    let (bound, sol) = solve_equation(&a, &b1, &c);
    let x = sol?.x;
    Some(Antidifference {
        ratio: antidifference_ratio(&dec, &x, &[]),
        normal_form: dec.normal_form(),
        x,
        degree_bound: bound,
    })
}

/// `H(k+1)/H(k)` for `H = F^(n+1, k) - F^(n, k)` in factored form, with
/// `s - 1 = p_full / prod d^e`.
struct HRatio {
    factored: Factored,
    p_full: Poly2,
    d_full: Vec<(Poly2, i32)>,
}

fn h_data(id: &WZIdentity) -> Result<HRatio, GosperError> {
    id.require_wz()?;
    let s = id.n_ratio().normalized();
    let mut num = Poly2::constant(s.constant.clone());
    let mut den = Poly2::one();
    let mut d_full = Vec::new();
    for (f, e) in &s.factors {
        let pw = f.pow(e.unsigned_abs());
        if *e > 0 {
            num = &num * &pw;
        } else {
            den = &den * &pw;
            d_full.push((f.clone(), -e));
        }
    }
    let p_full = &num - &den;
    if p_full.is_zero() {
        return Err(GosperError::DegenerateRatio);
    }
    let mut factored = Factored::from_ratio(&id.k_ratio().normalized());
    factored.push(&p_full.shift(Var::K, 1), 1);
    factored.push(&p_full, -1);
    for (d, e) in &d_full {
        if d.mentions(Var::K) {
            factored.push(d, *e);
            factored.push(&d.shift(Var::K, 1), -e);
        }
    }
    Ok(HRatio {
        factored,
        p_full,
        d_full,
    })
}

/// `H(k+1)/H(k)` where `H(k) = F^(n+1, k) - F^(n, k)`.
pub fn h_ratio(id: &WZIdentity) -> Result<RatFunc2, GosperError> {
    Ok(h_data(id)?.factored.to_ratfunc())
}

impl HRatio {
    /// `R = G / F^ = r(k-1) x(k) / p(k) * (s - 1)`.
    fn certificate(&self, dec: &Decomposition, x: &UniPolyQn) -> RatFunc2 {
        let mut extra = vec![(self.p_full.clone(), 1)];
        extra.extend(self.d_full.iter().map(|(d, e)| (d.clone(), -e)));
        antidifference_ratio(dec, x, &extra)
    }
}

/// `R(n, 0)` as an element of `Q(n)`, if defined.
fn at_k_zero(r: &RatFunc2) -> Option<QnFrac> {
    let r0 = r.subs(Var::K, &BigRat::zero())?;
    let num = r0.num().as_univariate(Var::N)?;
    let den = r0.den().as_univariate(Var::N)?;
    Some(QnFrac::new(num, den))
}

/// Synthesizes a WZ certificate for `id` with Gosper's algorithm and checks
/// it exactly. Among several antidifferences the one with `G(n, 0) = 0` is
/// taken.
pub fn synthesize_certificate(id: &WZIdentity) -> Result<GosperResult, GosperError> {
    let h = h_data(id)?;
    let dec = decompose(h.factored.clone());
    let dispersion_set: Vec<u64> = dec.dispersion.iter().copied().collect();
    let (a, b1, c) = dec.equation();
    let (bound, sol) = solve_equation(&a, &b1, &c);
    let not_summable = |bound| GosperResult {
        status: GosperStatus::NotSummable,
        certificate: None,
        degree_bound_used: bound,
        dispersion_set: dispersion_set.clone(),
    };
    let Some(sol) = sol else {
        return Ok(not_summable(bound));
    };

    let mut x = sol.x.clone();
    let mut cert = h.certificate(&dec, &x);
    if !boundary_vanishes(&cert) {
        if let Some(r0) = at_k_zero(&cert) {
            for xh in &sol.homogeneous {
                let Some(h0) = at_k_zero(&h.certificate(&dec, xh)).filter(|v| !v.is_zero()) else {
                    continue;
                };
                let lambda = -&(&r0 / &h0);
                x = &x + &xh.scale(&lambda);
                cert = h.certificate(&dec, &x);
                break;
            }
        }
    }

    if wz_residual(id, &cert).is_zero() && boundary_vanishes(&cert) {
        Ok(GosperResult {
            status: GosperStatus::Summable,
            certificate: Some(cert),
            degree_bound_used: bound,
            dispersion_set,
        })
    } else {
        Ok(not_summable(bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Poly2 {
        Poly2::k()
    }
    fn c(v: i64) -> Poly2 {
        Poly2::constant(int(v))
    }
    fn rf(a: Poly2, b: Poly2) -> RatFunc2 {
        RatFunc2::new(a, b).unwrap()
    }

    #[test]
    fn normal_form_smoke_cases() {
        let nf = gosper_normal_form(&rf(&k() + &c(2), k()));
        assert_eq!(nf.dispersion_set, vec![2]);
        assert_eq!(nf.q, UniPolyQn::one());
        assert_eq!(nf.r, UniPolyQn::one());
        assert_eq!(nf.p, UniPolyQn::from_poly2(&(&k() * &(&k() + &c(1)))));
        assert!(nf.gcd_condition_holds());

        let nf = gosper_normal_form(&RatFunc2::one());
        assert_eq!(
            (nf.p, nf.q, nf.r),
            (UniPolyQn::one(), UniPolyQn::one(), UniPolyQn::one())
        );

        let z = QnFrac::constant(rat(-3, 7));
        let nf = gosper_normal_form(&RatFunc2::constant(rat(-3, 7)));
        assert_eq!(nf.q, UniPolyQn::constant(z));
        assert_eq!(nf.p, UniPolyQn::one());
    }

    #[test]
    fn summand_k() {
        // t(k) = k, T(k) = k(k-1)/2
        let ad = gosper(&rf(&k() + &c(1), k())).expect("summable");
        let x = UniPolyQn::from_poly2(&(&k() * &(&k() - &c(1))).scale(&rat(1, 2)));
        assert_eq!(ad.x, x);
        for kk in 1..=10 {
            let t = |v: i64| int(v) * ad.ratio.eval(&int(0), &int(v)).unwrap();
            assert_eq!(t(kk + 1) - t(kk), int(kk));
        }
    }

    #[test]
    fn summand_reciprocal_product() {
        // t(k) = 1/(k(k+1)) telescopes to -1/k
        let ad = gosper(&rf(k(), &k() + &c(2))).expect("summable");
        let t = |v: i64| rat(1, v * (v + 1));
        let big_t = |v: i64| t(v) * ad.ratio.eval(&int(0), &int(v)).unwrap();
        for kk in 1..=10 {
            assert_eq!(big_t(kk + 1) - big_t(kk), t(kk));
        }
    }

    #[test]
    fn factorial_is_not_summable() {
        assert!(gosper(&RatFunc2::from_poly(&k() + &c(1))).is_none());
    }

    #[test]
    fn solve_checks_equation_exactly() {
        // q = 1, r = 1, p = k: f(k+1) - f(k) = k
        let p = UniPolyQn::from_poly2(&k());
        let f = gosper_solve(&p, &UniPolyQn::one(), &UniPolyQn::one()).unwrap();
        let lhs = &f.shift(1) - &f;
        assert_eq!(lhs, p);
        // (k+1) f(k+1) - f(k) = 1 has no polynomial solution
        let q = UniPolyQn::from_poly2(&(&k() + &c(1)));
        assert!(gosper_solve(&UniPolyQn::one(), &q, &UniPolyQn::one()).is_none());
    }
}
