//! Laurent polynomials in the spectral unit `z` (written ζ in the maths)
//! over exact rationals. These are the coefficients of every truncated
//! series in the crate; exponents may be negative.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::num::{rat_int, rat_to_f64, Rational};

/// Invariant: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZetaPoly {
    terms: BTreeMap<i64, Rational>,
}

impl ZetaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(rat_int(1), 0)
    }

    pub fn monomial(c: Rational, zpow: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(zpow, c);
        }
        Self { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single `(exponent, coefficient)` pair if this is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn coeff(&self, zpow: i64) -> Rational {
        self.terms.get(&zpow).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, zpow: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(zpow).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&zpow);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
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
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.terms.insert(*e, v * c);
        }
        out
    }

    /// Multiply by `c * z^zpow`.
    pub fn mul_monomial(&self, c: &Rational, zpow: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.terms.insert(e + zpow, v * c);
        }
        out
    }

    /// Substitute `z -> z^k` (exponent scaling). `k` may be negative.
    pub fn scale_exponents(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e * k, v.clone());
        }
        out
    }

    /// Value at `z = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> Rational {
        let mut s = Rational::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// d/dz followed by z = 1: the sum of `exponent * coefficient`.
    pub fn derivative_at_one(&self) -> Rational {
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            s += c * rat_int(*e);
        }
        s
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| rat_to_f64(c) * z.powi(*e as i32))
            .sum()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

impl fmt::Display for ZetaPoly {
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
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn cancellation_removes_terms() {
        let mut p = ZetaPoly::monomial(rat(1, 2), 3);
        p.add_term(3, rat(-1, 2));
        assert!(p.is_zero());
    }

    #[test]
    fn product_of_binomials() {
        // (1 + z^2)(1 - z^2) = 1 - z^4
        let a = ZetaPoly::from_terms([(0, rat(1, 1)), (2, rat(1, 1))]);
        let b = ZetaPoly::from_terms([(0, rat(1, 1)), (2, rat(-1, 1))]);
        let p = a.mul(&b);
        assert_eq!(p, ZetaPoly::from_terms([(0, rat(1, 1)), (4, rat(-1, 1))]));
    }

    #[test]
    fn derivative_at_one() {
        // d/dz (z^2 - z^-2) at z=1 is 4
        let p = ZetaPoly::from_terms([(2, rat(1, 1)), (-2, rat(-1, 1))]);
        assert_eq!(p.derivative_at_one(), rat(4, 1));
        assert_eq!(p.eval_at_one(), rat(0, 1));
    }
}
