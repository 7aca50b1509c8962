//! Truncated Laurent series in `u = q^{1/2}` with `ZetaPoly` coefficients.
//!
//! Working in the half-power `u` keeps every exponent in the lattice an
//! integer (weights and intertwiner tables contain half-integer powers of
//! `q`). The truncation order is an exclusive bound on the `u` exponent;
//! binary operations propagate it by the min rule, with the valuation
//! shift for products.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::{rat_int, rational_sqrt, Rational};
use crate::zeta::ZetaPoly;

/// Default exclusive `u`-truncation: keeps everything through `q^8`.
pub const DEFAULT_TRUNC: i64 = 17;

/// An exact monomial `coeff * u^upow * z^zpow`, used as a substitution
/// argument for the special-function constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub upow: i64,
    pub zpow: i64,
}

impl Monomial {
    pub fn new(coeff: Rational, upow: i64, zpow: i64) -> Self {
        Self { coeff, upow, zpow }
    }

    /// The unit `z` itself.
    pub fn zeta() -> Self {
        Self::new(rat_int(1), 0, 1)
    }

    /// `q^{n/2}` as `u^n`.
    pub fn u_pow(n: i64) -> Self {
        Self::new(rat_int(1), n, 0)
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        Self::new(rat_int(1), 2 * n, 0)
    }

    pub fn one() -> Self {
        Self::new(rat_int(1), 0, 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.coeff * &other.coeff,
            self.upow + other.upow,
            self.zpow + other.zpow,
        )
    }

    pub fn inv(&self) -> Self {
        assert!(!self.coeff.is_zero(), "cannot invert zero monomial");
        Self::new(Rational::from_integer(1.into()) / &self.coeff, -self.upow, -self.zpow)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut c = Rational::from_integer(1.into());
        let base = if k >= 0 { self.coeff.clone() } else { Rational::from_integer(1.into()) / &self.coeff };
        for _ in 0..k.unsigned_abs() {
            c *= &base;
        }
        Self::new(c, self.upow * k, self.zpow * k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: BTreeMap<i64, ZetaPoly>,
    trunc: i64,
}

impl QSeries {
    pub fn zero(trunc: i64) -> Self {
        Self { coeffs: BTreeMap::new(), trunc }
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(Monomial::one(), trunc)
    }

    pub fn monomial(m: Monomial, trunc: i64) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(m.upow, ZetaPoly::monomial(m.coeff, m.zpow));
        s
    }

    pub fn constant(c: Rational, trunc: i64) -> Self {
        Self::monomial(Monomial::new(c, 0, 0), trunc)
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, ZetaPoly)>, trunc: i64) -> Self {
        let mut s = Self::zero(trunc);
        for (e, p) in pairs {
            s.add_term(e, p);
        }
        s
    }

    pub fn truncation_order(&self) -> i64 {
        self.trunc
    }

    /// Valuation in `u`; equals the truncation order for the zero series.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.trunc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, upow: i64) -> ZetaPoly {
        self.coeffs.get(&upow).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &ZetaPoly)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, upow: i64, p: ZetaPoly) {
        if p.is_zero() || upow >= self.trunc {
            return;
        }
        let entry = self.coeffs.entry(upow).or_default();
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.coeffs.remove(&upow);
        }
    }

    /// Restrict to a lower truncation order.
    pub fn truncate(&self, trunc: i64) -> Self {
        let t = trunc.min(self.trunc);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(e, _)| **e < t)
            .map(|(e, p)| (*e, p.clone()))
            .collect();
        Self { coeffs, trunc: t }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (e, p) in &other.coeffs {
            if *e < trunc {
                out.add_term(*e, p.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (e, p) in &self.coeffs {
            out.coeffs.insert(*e, p.neg());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        // A factor known modulo u^T with valuation v contributes an error
        // of order v to any product, hence the shifted min rule.
        let trunc = (self.trunc + other.valuation()).min(other.trunc + self.valuation());
        let other_val = other.valuation();
        let mut out = Self::zero(trunc);
        for (ea, pa) in &self.coeffs {
            if ea + other_val >= trunc {
                break;
            }
            for (eb, pb) in &other.coeffs {
                let e = ea + eb;
                if e >= trunc {
                    break;
                }
                out.add_term(e, pa.mul(pb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(self.trunc + m.upow);
        for (e, p) in &self.coeffs {
            out.add_term(e + m.upow, p.mul_monomial(&m.coeff, m.zpow));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc);
        }
        let mut out = Self::zero(self.trunc);
        for (e, p) in &self.coeffs {
            out.coeffs.insert(*e, p.scale(c));
        }
        out
    }

    pub fn scale_zeta(&self, p: &ZetaPoly) -> Self {
        let mut out = Self::zero(self.trunc);
        for (e, c) in &self.coeffs {
            out.add_term(*e, c.mul(p));
        }
        out
    }

    /// Substitute `z -> z^k`. With `k = 0` every coefficient collapses to
    /// its value at `z = 1`.
    pub fn scale_zeta_exponents(&self, k: i64) -> Self {
        let mut out = Self::zero(self.trunc);
        for (e, p) in &self.coeffs {
            if k == 0 {
                out.add_term(*e, ZetaPoly::constant(p.eval_at_one()));
            } else {
                out.add_term(*e, p.scale_exponents(k));
            }
        }
        out
    }

    /// Set `z = 1` in every coefficient.
    pub fn eval_zeta_one(&self) -> Self {
        self.scale_zeta_exponents(0)
    }

    /// d/dz followed by `z = 1`, leaving a pure q-series.
    pub fn zeta_derivative_at_one(&self) -> Self {
        let mut out = Self::zero(self.trunc);
        for (e, p) in &self.coeffs {
            out.add_term(*e, ZetaPoly::constant(p.derivative_at_one()));
        }
        out
    }

    /// Leading coefficient if it is a single zeta-monomial.
    fn leading_monomial(&self) -> Option<Monomial> {
        let (e, p) = self.coeffs.iter().next()?;
        let (zpow, c) = p.as_monomial()?;
        Some(Monomial::new(c.clone(), *e, zpow))
    }

    /// Multiplicative inverse. The leading coefficient must be a single
    /// nonzero zeta-monomial.
    pub fn invert(&self) -> Result<Self> {
        let lead = self.leading_monomial().ok_or(Error::NonUnitLeadingCoefficient)?;
        let v = lead.upow;
        let rel_order = self.trunc - v;
        // Normalise to 1 + n(u, z) with n of positive valuation.
        let unit = self.mul_monomial(&lead.inv());
        let mut inv_unit = Self::one(rel_order);
        // c[k] solved from sum_{i<=k} unit[i] * inv[k-i] = delta_{k,0}.
        for k in 1..rel_order {
            let mut acc = ZetaPoly::zero();
            for (i, p) in unit.coeffs.range(1..=k) {
                let c = inv_unit.coeff(k - i);
                if !c.is_zero() {
                    acc = acc.add(&p.mul(&c));
                }
            }
            if !acc.is_zero() {
                inv_unit.add_term(k, acc.neg());
            }
        }
        Ok(inv_unit.mul_monomial(&lead.inv()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.invert()?))
    }

    /// Principal square root. Requires an even valuation and a leading
    /// zeta-monomial with even zeta exponent and square rational value;
    /// the positive root is taken.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero(self.trunc));
        }
        let lead = self
            .leading_monomial()
            .ok_or_else(|| Error::NotAFormalSquare("leading coefficient is not a monomial".into()))?;
        if lead.upow % 2 != 0 {
            return Err(Error::NotAFormalSquare(format!(
                "odd u-valuation {}",
                lead.upow
            )));
        }
        if lead.zpow % 2 != 0 {
            return Err(Error::NotAFormalSquare(format!(
                "odd zeta exponent {} in leading term",
                lead.zpow
            )));
        }
        let root = rational_sqrt(&lead.coeff).ok_or_else(|| {
            Error::NotAFormalSquare(format!("leading coefficient {} is not a rational square", lead.coeff))
        })?;
        let v = lead.upow;
        let rel_order = self.trunc - v;
        let unit = self.mul_monomial(&lead.inv());
        // s with s^2 = unit, solved order by order: 2 s[k] = unit[k] - sum.
        let mut s = Self::one(rel_order);
        let half = Rational::new(1.into(), 2.into());
        for k in 1..rel_order {
            let mut acc = unit.coeff(k);
            for i in 1..k {
                let a = s.coeff(i);
                if a.is_zero() {
                    continue;
                }
                let b = s.coeff(k - i);
                if b.is_zero() {
                    continue;
                }
                acc = acc.sub(&a.mul(&b));
            }
            acc = acc.scale(&half);
            if !acc.is_zero() {
                s.add_term(k, acc);
            }
        }
        Ok(s.mul_monomial(&Monomial::new(root, v / 2, lead.zpow / 2)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.trunc);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// True when both series agree on every `u` exponent strictly below
    /// `order`. Panics if either operand is not known that far.
    pub fn eq_to_order(&self, other: &Self, order: i64) -> bool {
        assert!(
            self.trunc >= order && other.trunc >= order,
            "comparison order {} exceeds truncation ({}, {})",
            order,
            self.trunc,
            other.trunc
        );
        self.first_difference(other, order).is_none()
    }

    /// First `(u_exp, z_exp, lhs, rhs)` difference below `order`, if any.
    pub fn first_difference(&self, other: &Self, order: i64) -> Option<(i64, i64, Rational, Rational)> {
        let lo = self.valuation().min(other.valuation());
        for e in lo..order {
            let a = self.coeff(e);
            let b = other.coeff(e);
            if a == b {
                continue;
            }
            let d = a.sub(&b);
            let ze = d.min_exponent().unwrap();
            return Some((e, ze, a.coeff(ze), b.coeff(ze)));
        }
        None
    }

    /// Evaluate at complex `u` and real `z`, returning `(re, im)`.
    pub fn eval_complex(&self, u: (f64, f64), z: f64) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, p) in &self.coeffs {
            let c = p.eval_f64(z);
            let (ur, ui) = complex_powi(u, *e);
            re += c * ur;
            im += c * ui;
        }
        (re, im)
    }

    /// Largest absolute coefficient value at real `z` over the top `span`
    /// stored orders, used for crude tail bounds in numeric mode.
    pub fn tail_magnitude(&self, z: f64, span: i64) -> f64 {
        let hi = self.trunc;
        self.coeffs
            .range(hi - span..)
            .map(|(_, p)| p.eval_f64(z).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_zeta_exponent(&self) -> Option<i64> {
        self.coeffs.values().filter_map(|p| p.max_exponent()).max()
    }

    pub fn min_zeta_exponent(&self) -> Option<i64> {
        self.coeffs.values().filter_map(|p| p.min_exponent()).min()
    }
}

fn complex_powi(u: (f64, f64), e: i64) -> (f64, f64) {
    let norm2 = u.0 * u.0 + u.1 * u.1;
    let (mut br, mut bi) = if e >= 0 { u } else { (u.0 / norm2, -u.1 / norm2) };
    let mut k = e.unsigned_abs();
    let (mut rr, mut ri) = (1.0, 0.0);
    while k > 0 {
        if k & 1 == 1 {
            let nr = rr * br - ri * bi;
            ri = rr * bi + ri * br;
            rr = nr;
        }
        let nbr = br * br - bi * bi;
        bi = 2.0 * br * bi;
        br = nbr;
        k >>= 1;
    }
    (rr, ri)
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(u^{})", self.trunc);
        }
        let mut first = true;
        for (e, p) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let qpow = if e % 2 == 0 {
                format!("q^{}", e / 2)
            } else {
                format!("q^{}/2", e)
            };
            if *e == 0 {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*{qpow}")?;
            }
        }
        write!(f, " + O(u^{})", self.trunc)
    }
}

/// Named binary operation dispatcher for the arithmetic surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

pub fn series_arith(a: &QSeries, b: &QSeries, op: SeriesOp) -> QSeries {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
    }
}

/// Signed magnitude check used by the numeric scanner: |re + i*im|.
pub fn complex_abs(v: (f64, f64)) -> f64 {
    (v.0 * v.0 + v.1 * v.1).sqrt()
}

pub use crate::num::rat;
