//! Exact rational functions of `q` over the integers.
//!
//! These carry the module-theoretic computations, where exact rank
//! decisions matter and truncated series would be unsound. A `RatFunc`
//! is a reduced fraction of integer polynomials with the denominator
//! normalised to positive leading coefficient and coprime contents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::num::Rational;
use crate::series::QSeries;
use crate::zeta::ZetaPoly;

/// Dense integer polynomial in `q`, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    c: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { c: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(v: BigInt) -> Self {
        let mut p = Self { c: vec![v] };
        p.trim();
        p
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        let mut p = Self { c };
        p.trim();
        p
    }

    /// `q^k`, `k >= 0`.
    pub fn q_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        Self { c }
    }

    fn trim(&mut self) {
        while self.c.last().map(|x| x.is_zero()).unwrap_or(false) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    /// Lowest nonzero power of `q`.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.c.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, v: &BigInt) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x * v).collect())
    }

    /// Content: gcd of all coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
        }
        g
    }

    /// Exact division; panics if not exact (internal use only).
    fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.c.clone();
        let dl = other.c.len();
        let lead = other.c.last().unwrap().clone();
        assert!(rem.len() >= dl);
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dl - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(&lead);
            assert!(r.is_zero(), "inexact polynomial division");
            quot[k] = qc.clone();
            for (j, b) in other.c.iter().enumerate() {
                rem[k + j] -= &qc * b;
            }
        }
        assert!(rem.iter().all(|x| x.is_zero()), "inexact polynomial division");
        Self::from_coeffs(quot)
    }

    /// Primitive part (content divided out, leading coefficient positive).
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::from_coeffs(self.c.iter().map(|x| x / &g).collect())
    }

    /// Polynomial gcd via the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return a.primitive();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
    }

    fn pseudo_rem(&self, other: &Self) -> Self {
        let db = other.degree().unwrap();
        let lead = other.c.last().unwrap().clone();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            let top = rem.c.last().unwrap().clone();
            rem = rem.scale(&lead).sub(&other.mul(&Poly::q_pow(shift)).scale(&top));
        }
        rem
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

/// Reduced fraction of integer polynomials in `q`.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = Self { num, den };
        f.reduce();
        f
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 || g.leading().map(|l| l != &BigInt::one()).unwrap_or(false) {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        // Coprime contents, positive denominator leading coefficient.
        let cn = self.num.content();
        let cd = self.den.content();
        let g = cn.gcd(&cd);
        if g > BigInt::one() {
            self.num = Poly::from_coeffs(self.num.c.iter().map(|x| x / &g).collect());
            self.den = Poly::from_coeffs(self.den.c.iter().map(|x| x / &g).collect());
        }
        if self.den.leading().unwrap().is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self { num: Poly::constant(BigInt::from(v)), den: Poly::one() }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self {
            num: Poly::constant(r.numer().clone()),
            den: Poly::constant(r.denom().clone()),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Self { num: Poly::q_pow(k as usize), den: Poly::one() }
        } else {
            Self { num: Poly::one(), den: Poly::q_pow((-k) as usize) }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Self {
        Self::one().div(self)
    }

    pub fn scale_int(&self, v: i64) -> Self {
        self.mul(&Self::from_int(v))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Laurent expansion about `q = 0`, truncated at `u`-order `trunc`
    /// (recall `u^2 = q`). Produces a zeta-free series.
    pub fn to_series(&self, trunc: i64) -> QSeries {
        if self.is_zero() {
            return QSeries::zero(trunc);
        }
        let v = self.den.valuation().unwrap() as i64;
        // den = q^v * unit, invert the unit by the usual recurrence.
        let unit: Vec<BigInt> = self.den.c[v as usize..].to_vec();
        let c0 = BigRational::from_integer(unit[0].clone());
        let rel_q_order = ((trunc + 1) / 2 + v + self.num.c.len() as i64 + 2).max(1) as usize;
        let mut inv = vec![Rational::zero(); rel_q_order];
        inv[0] = Rational::one() / &c0;
        for k in 1..rel_q_order {
            let mut acc = Rational::zero();
            for i in 1..=k.min(unit.len() - 1) {
                acc += BigRational::from_integer(unit[i].clone()) * &inv[k - i];
            }
            inv[k] = -acc / &c0;
        }
        let mut out = QSeries::zero(trunc);
        for (i, a) in self.num.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let af = BigRational::from_integer(a.clone());
            for (k, b) in inv.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let qexp = i as i64 + k as i64 - v;
                if 2 * qexp >= trunc {
                    break;
                }
                out.add_term(2 * qexp, ZetaPoly::constant(&af * b));
            }
        }
        out
    }

    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_rational(x) / d)
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // Both sides canonical after reduction.
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn poly_str(p: &Poly) -> String {
            if p.is_zero() {
                return "0".into();
            }
            let mut parts = vec![];
            for (i, c) in p.c.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                parts.push(match i {
                    0 => format!("{c}"),
                    1 => format!("{c}q"),
                    _ => format!("{c}q^{i}"),
                });
            }
            parts.join("+")
        }
        if self.den == Poly::one() {
            write!(f, "{}", poly_str(&self.num))
        } else {
            write!(f, "({})/({})", poly_str(&self.num), poly_str(&self.den))
        }
    }
}

/// The symmetric q-integer `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn q_integer(n: i64) -> RatFunc {
    assert!(n >= 0, "q_integer requires n >= 0");
    if n == 0 {
        return RatFunc::zero();
    }
    // (q^{2n} - 1) / (q^{n-1} (q^2 - 1))
    let num = Poly::q_pow(2 * n as usize).sub(&Poly::one());
    let den = Poly::q_pow((n - 1) as usize).mul(&Poly::q_pow(2).sub(&Poly::one()));
    RatFunc::new(num, den)
}

/// `[c]` for any integer, odd in `c`.
pub fn q_bracket(c: i64) -> RatFunc {
    if c >= 0 {
        q_integer(c)
    } else {
        q_integer(-c).neg()
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: i64) -> RatFunc {
    let mut out = RatFunc::one();
    for i in 1..=n {
        out = out.mul(&q_integer(i));
    }
    out
}

/// Gaussian binomial `[n]! / ([j]! [n-j]!)`.
pub fn q_binomial(n: i64, j: i64) -> RatFunc {
    assert!(0 <= j && j <= n, "q_binomial requires 0 <= j <= n");
    q_factorial(n).div(&q_factorial(j).mul(&q_factorial(n - j)))
}

/// Laurent polynomial in the spectral unit with `RatFunc` coefficients.
/// This is the exact scalar type for intertwiner matrix entries, where
/// single zeta powers multiply rational functions of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZRat {
    terms: BTreeMap<i64, RatFunc>,
}

impl ZRat {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, RatFunc::one())
    }

    pub fn monomial(zpow: i64, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(zpow, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, zpow: i64, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(zpow).or_insert_with(RatFunc::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&zpow);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v.mul(c));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &RatFunc)> {
        self.terms.iter()
    }

    /// Value at `z = 1`.
    pub fn eval_zeta_one(&self) -> RatFunc {
        let mut s = RatFunc::zero();
        for c in self.terms.values() {
            s = s.add(c);
        }
        s
    }

    pub fn to_series(&self, trunc: i64) -> QSeries {
        let mut out = QSeries::zero(trunc);
        for (e, c) in &self.terms {
            let s = c.to_series(trunc);
            out = out.add(&s.scale_zeta(&ZetaPoly::monomial(crate::num::rat_int(1), *e)));
        }
        out
    }
}

impl fmt::Display for ZRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "z*({c})")?,
                _ => write!(f, "z^{e}*({c})")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;
    use crate::series::Monomial;

    #[test]
    fn q_integer_small_values() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(1), RatFunc::one());
        // [3] = q^-2 + 1 + q^2 by polynomial division.
        let three = q_integer(3);
        let want = RatFunc::q_pow(-2).add(&RatFunc::one()).add(&RatFunc::q_pow(2));
        assert_eq!(three, want);
    }

    #[test]
    fn q_integer_addition_rule() {
        // [m+n] = q^n [m] + q^-m [n] for 0 <= m,n <= 8.
        for m in 0..=8 {
            for n in 0..=8 {
                let lhs = q_integer(m + n);
                let rhs = RatFunc::q_pow(n)
                    .mul(&q_integer(m))
                    .add(&RatFunc::q_pow(-m).mul(&q_integer(n)));
                assert_eq!(lhs, rhs, "failed at m={m}, n={n}");
            }
        }
    }

    #[test]
    fn q_binomial_values() {
        for n in 0..=6 {
            assert_eq!(q_binomial(n, 0), RatFunc::one());
        }
        // [2 choose 1] = q^-1 + q, direct factorial ratio.
        assert_eq!(q_binomial(2, 1), RatFunc::q_pow(-1).add(&RatFunc::q_pow(1)));
        // [4 choose 2] = [4][3]/[2], cancelling factorials.
        let want = q_integer(4).mul(&q_integer(3)).div(&q_integer(2));
        assert_eq!(q_binomial(4, 2), want);
    }

    #[test]
    fn series_expansion_geometric() {
        // 1/(1-q) = 1 + q + q^2 + ...
        let f = RatFunc::new(Poly::one(), Poly::one().sub(&Poly::q_pow(1)));
        let s = f.to_series(13);
        for k in 0..6 {
            assert_eq!(s.coeff(2 * k).coeff(0), rat(1, 1));
        }
    }

    #[test]
    fn series_expansion_matches_series_invert() {
        let f = q_integer(2).inv();
        let s = f.to_series(15);
        let two = QSeries::monomial(Monomial::q_pow(-1), 17)
            .add(&QSeries::monomial(Monomial::q_pow(1), 17));
        let inv = two.invert().unwrap();
        assert!(s.eq_to_order(&inv, 15));
    }

    #[test]
    fn series_expansion_of_zero() {
        assert!(RatFunc::zero().to_series(9).is_zero());
    }

    #[test]
    fn ratfunc_field_ops() {
        let a = q_integer(4).div(&q_integer(2));
        let b = q_integer(2);
        // [4]/[2] = q^2 + q^-2
        assert_eq!(a, RatFunc::q_pow(2).add(&RatFunc::q_pow(-2)));
        assert_eq!(a.mul(&b), q_integer(4));
        assert_eq!(a.sub(&a), RatFunc::zero());
        assert_eq!(b.mul(&b.inv()), RatFunc::one());
    }

    #[test]
    fn zrat_arithmetic() {
        let a = ZRat::monomial(2, q_integer(2));
        let b = ZRat::monomial(-2, q_integer(2));
        let p = a.mul(&b);
        assert_eq!(p, ZRat::monomial(0, q_integer(2).mul(&q_integer(2))));
        assert_eq!(a.eval_zeta_one(), q_integer(2));
    }
}
