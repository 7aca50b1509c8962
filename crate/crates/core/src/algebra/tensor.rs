//! Tensor products of two module factors with the coproduct action
//! `D(e_i) = e_i x 1 + t_i x e_i`, `D(f_i) = f_i x t_i^-1 + 1 x f_i`,
//! `D(t_i) = t_i x t_i`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::ratfunc::RatFunc;

use super::free::Generator;
use super::module::{BasisId, HwModule};

/// Element of `M1 (x) M2` in the pivot bases of its factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElem {
    pub terms: BTreeMap<(BasisId, BasisId), RatFunc>,
}

impl TensorElem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(a: BasisId, b: BasisId) -> Self {
        let mut t = Self::new();
        t.add(a, b, RatFunc::one());
        t
    }

    pub fn add(&mut self, a: BasisId, b: BasisId, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::new();
        for ((a, b), v) in &self.terms {
            out.add(*a, *b, v.mul(c));
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), v) in &other.terms {
            out.add(*a, *b, v.clone());
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scale(&RatFunc::from_int(-1)))
    }

    /// Total classical weight, if the element is weight-homogeneous.
    pub fn weight(&self, m1: &HwModule, m2: &HwModule) -> Option<(i64, i64)> {
        let mut it = self.terms.keys();
        let (a, b) = it.next()?;
        let w0 = sum2(m1.weight_of(*a), m2.weight_of(*b));
        for (a, b) in it {
            if sum2(m1.weight_of(*a), m2.weight_of(*b)) != w0 {
                return None;
            }
        }
        Some(w0)
    }

    /// Coproduct action of one generator.
    pub fn apply(&self, gen: Generator, m1: &HwModule, m2: &HwModule) -> Result<Self> {
        let mut out = Self::new();
        for ((a, b), c) in &self.terms {
            match gen {
                Generator::E(i) => {
                    for (a2, c2) in m1.apply(Generator::E(i), *a)? {
                        out.add(a2, *b, c.mul(&c2));
                    }
                    let h = pick(m1.weight_of(*a), i);
                    let tfac = RatFunc::q_pow(h).mul(c);
                    for (b2, c2) in m2.apply(Generator::E(i), *b)? {
                        out.add(*a, b2, tfac.mul(&c2));
                    }
                }
                Generator::F(i) => {
                    let h = pick(m2.weight_of(*b), i);
                    let tfac = RatFunc::q_pow(-h).mul(c);
                    for (a2, c2) in m1.apply(Generator::F(i), *a)? {
                        out.add(a2, *b, tfac.mul(&c2));
                    }
                    for (b2, c2) in m2.apply(Generator::F(i), *b)? {
                        out.add(*a, b2, c.mul(&c2));
                    }
                }
                Generator::T(i) => {
                    let h = pick(m1.weight_of(*a), i) + pick(m2.weight_of(*b), i);
                    out.add(*a, *b, RatFunc::q_pow(h).mul(c));
                }
                Generator::TInv(i) => {
                    let h = pick(m1.weight_of(*a), i) + pick(m2.weight_of(*b), i);
                    out.add(*a, *b, RatFunc::q_pow(-h).mul(c));
                }
            }
        }
        Ok(out)
    }

    /// Apply a word of lowering generators (leftmost acts last).
    pub fn apply_word(&self, word: &[u8], m1: &HwModule, m2: &HwModule) -> Result<Self> {
        let mut cur = self.clone();
        for &i in word.iter().rev() {
            cur = cur.apply(Generator::F(i), m1, m2)?;
        }
        Ok(cur)
    }

    /// Like [`TensorElem::apply_word`], but silently drops image slots
    /// beyond the built module windows. Sound whenever the caller also
    /// restricts its matching keys to in-window slots, since lowering
    /// never routes through deeper degrees than the final slot.
    pub fn apply_word_lossy(&self, word: &[u8], m1: &HwModule, m2: &HwModule) -> Result<Self> {
        let mut cur = self.clone();
        for &i in word.iter().rev() {
            let mut next = Self::new();
            for ((a, b), c) in &cur.terms {
                // f_i (x) t_i^-1 part.
                if a.0 < m1.max_degree {
                    let h = pick(m2.weight_of(*b), i);
                    let tfac = RatFunc::q_pow(-h).mul(c);
                    for (a2, c2) in m1.apply(Generator::F(i), *a)? {
                        next.add(a2, *b, tfac.mul(&c2));
                    }
                }
                // 1 (x) f_i part.
                if b.0 < m2.max_degree {
                    for (b2, c2) in m2.apply(Generator::F(i), *b)? {
                        next.add(*a, b2, c.mul(&c2));
                    }
                }
            }
            cur = next;
        }
        Ok(cur)
    }
}

/// Build a tensor element from word-level data, expressing each leg in
/// its module's pivot basis.
pub fn from_free_words(
    m1: &mut HwModule,
    m2: &mut HwModule,
    terms: &[(Vec<u8>, Vec<u8>, RatFunc)],
) -> Result<TensorElem> {
    let mut out = TensorElem::new();
    for (w1, w2, c) in terms {
        let mut e1 = super::free::FreeElement::new();
        e1.insert(w1.clone(), RatFunc::one());
        let c1 = m1.express_free(&e1, w1.len())?;
        let mut e2 = super::free::FreeElement::new();
        e2.insert(w2.clone(), RatFunc::one());
        let c2 = m2.express_free(&e2, w2.len())?;
        for (i1, v1) in &c1 {
            for (i2, v2) in &c2 {
                out.add((w1.len(), *i1), (w2.len(), *i2), c.mul(v1).mul(v2));
            }
        }
    }
    Ok(out)
}

fn pick(w: (i64, i64), i: u8) -> i64 {
    if i == 0 {
        w.0
    } else {
        w.1
    }
}

fn sum2(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
    (a.0 + b.0, a.1 + b.1)
}
