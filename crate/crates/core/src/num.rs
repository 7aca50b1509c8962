//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision reduced fraction with positive
//! denominator; both invariants are maintained by the underlying type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, if one exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num = r.numer();
    let den = r.denom();
    let ns = num.sqrt();
    let ds = den.sqrt();
    if &(&ns * &ns) == num && &(&ds * &ds) == den {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Approximate `f64` value of a rational.
pub fn rat_to_f64(r: &Rational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Split into quotient and remainder so that huge fractions stay finite.
    let q = num / den;
    let rem = num - &q * den;
    let qf = big_to_f64(&q);
    let rf = big_to_f64(&rem) / big_to_f64(den);
    qf + rf
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}
