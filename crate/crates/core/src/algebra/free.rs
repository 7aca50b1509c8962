//! The free calculus on words in the lowering generators, and the
//! contravariant form that carves the irreducible quotient out of it.
//!
//! An `FWord` `[i1, i2, ..., id]` stands for `f_{i1} f_{i2} ... f_{id}`
//! applied to the highest-weight vector; its principal degree is its
//! length. Cartan data is fixed: `a_ii = 2`, `a_ij = -2`.

use std::collections::{BTreeMap, HashMap};

use crate::ratfunc::{q_bracket, RatFunc};

/// Word in the lowering generators; entries are 0 or 1.
pub type FWord = Vec<u8>;

/// Formal combination of words with rational-function coefficients,
/// attached to a highest weight via the calling context.
pub type FreeElement = BTreeMap<FWord, RatFunc>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E(u8),
    F(u8),
    T(u8),
    TInv(u8),
}

fn cartan(i: u8, j: u8) -> i64 {
    if i == j {
        2
    } else {
        -2
    }
}

/// `<h_i, lambda - sum of word roots>` for the suffix starting at `from`.
fn pairing_after(lambda: (i64, i64), word: &[u8], from: usize, i: u8) -> i64 {
    let base = if i == 0 { lambda.0 } else { lambda.1 };
    let mut acc = base;
    for &j in &word[from..] {
        acc -= cartan(i, j);
    }
    acc
}

/// Classical weight of a word: `lambda` minus the simple roots used.
pub fn word_weight(lambda: (i64, i64), word: &[u8]) -> (i64, i64) {
    let mut w = lambda;
    for &j in word {
        w.0 -= cartan(0, j);
        w.1 -= cartan(1, j);
    }
    w
}

pub(crate) fn add_to(out: &mut FreeElement, word: FWord, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match out.entry(word) {
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

/// Apply one generator to a free element over the highest weight
/// `lambda` (given by its pairings with `h_0`, `h_1`).
pub fn free_action(gen: Generator, elem: &FreeElement, lambda: (i64, i64)) -> FreeElement {
    let mut out = FreeElement::new();
    for (word, c) in elem {
        match gen {
            Generator::F(i) => {
                let mut w = Vec::with_capacity(word.len() + 1);
                w.push(i);
                w.extend_from_slice(word);
                add_to(&mut out, w, c.clone());
            }
            Generator::E(i) => {
                // e_i hits each matching letter through the commutator,
                // with the t-eigenvalue of everything to its right.
                for (r, &j) in word.iter().enumerate() {
                    if j != i {
                        continue;
                    }
                    let h = pairing_after(lambda, word, r + 1, i);
                    let coeff = q_bracket(h).mul(c);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut w = Vec::with_capacity(word.len() - 1);
                    w.extend_from_slice(&word[..r]);
                    w.extend_from_slice(&word[r + 1..]);
                    add_to(&mut out, w, coeff);
                }
            }
            Generator::T(i) => {
                let h = pairing_after(lambda, word, 0, i);
                add_to(&mut out, word.clone(), RatFunc::q_pow(h).mul(c));
            }
            Generator::TInv(i) => {
                let h = pairing_after(lambda, word, 0, i);
                add_to(&mut out, word.clone(), RatFunc::q_pow(-h).mul(c));
            }
        }
    }
    out
}

/// Memoised contravariant (Shapovalov-type) form on words:
/// `<v, v> = 1` and `<f_i x, y> = <x, e_i y>`.
pub struct Form {
    pub lambda: (i64, i64),
    memo: HashMap<(FWord, FWord), RatFunc>,
}

impl Form {
    pub fn new(lambda: (i64, i64)) -> Self {
        Self { lambda, memo: HashMap::new() }
    }

    pub fn pair_words(&mut self, a: &FWord, b: &FWord) -> RatFunc {
        if a.len() != b.len() {
            return RatFunc::zero();
        }
        if a.is_empty() {
            return RatFunc::one();
        }
        if word_weight(self.lambda, a) != word_weight(self.lambda, b) {
            return RatFunc::zero();
        }
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        // Strip the first letter of `a` and push it onto `b` as a raising
        // operator.
        let i = a[0];
        let rest: FWord = a[1..].to_vec();
        let mut b_elem = FreeElement::new();
        b_elem.insert(b.clone(), RatFunc::one());
        let eb = free_action(Generator::E(i), &b_elem, self.lambda);
        let mut acc = RatFunc::zero();
        for (w, c) in &eb {
            let inner = self.pair_words(&rest, w);
            if !inner.is_zero() {
                acc = acc.add(&inner.mul(c));
            }
        }
        self.memo.insert(key, acc.clone());
        acc
    }

    pub fn pair(&mut self, a: &FreeElement, b: &FreeElement) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let g = self.pair_words(wa, wb);
                if !g.is_zero() {
                    acc = acc.add(&g.mul(ca).mul(cb));
                }
            }
        }
        acc
    }
}

/// Gram matrix of the form on all words of a given principal degree,
/// in lexicographic word order.
pub fn contravariant_gram(lambda: (i64, i64), degree: usize) -> (Vec<FWord>, Vec<Vec<RatFunc>>) {
    let words = all_words(degree);
    let mut form = Form::new(lambda);
    let n = words.len();
    let mut g = vec![vec![RatFunc::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = form.pair_words(&words[i], &words[j]);
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    (words, g)
}

/// All words of a given length in lexicographic order.
pub fn all_words(degree: usize) -> Vec<FWord> {
    let mut out = vec![];
    for mask in 0..(1usize << degree) {
        let mut w = Vec::with_capacity(degree);
        for b in (0..degree).rev() {
            w.push(((mask >> b) & 1) as u8);
        }
        out.push(w);
    }
    out.sort();
    out
}
