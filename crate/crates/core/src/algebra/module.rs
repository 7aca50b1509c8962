//! Irreducible highest-weight modules realised as Gram-nondegenerate
//! quotients of the free word span, truncated at a principal degree.
//!
//! The basis at each degree is a greedy maximal set of words on which
//! the contravariant form stays nondegenerate; expressing any word in
//! that basis is a Gram solve, and the generator action tables are
//! built once from the free calculus.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{solve, SolveOutcome};
use crate::ratfunc::RatFunc;

use super::free::{all_words, free_action, word_weight, FWord, Form, FreeElement, Generator};

/// `(degree, index)` of a module basis vector.
pub type BasisId = (usize, usize);

type Combination = Vec<(usize, RatFunc)>;

pub struct HwModule {
    /// Pairings `(<h0, lambda>, <h1, lambda>)` of the highest weight.
    pub lambda: (i64, i64),
    pub max_degree: usize,
    /// Pivot words per degree, in lexicographic order.
    words: Vec<Vec<FWord>>,
    /// Classical weight of each basis vector.
    weights: Vec<Vec<(i64, i64)>>,
    /// `f_action[i][d][b]`: image of basis vector `(d, b)` under `f_i`,
    /// as a combination at degree `d + 1` (defined for `d < max_degree`).
    f_action: [Vec<Vec<Combination>>; 2],
    /// `e_action[i][d][b]`: image at degree `d - 1`.
    e_action: [Vec<Vec<Combination>>; 2],
    form: Form,
}

impl HwModule {
    /// Build the module up to (and including) `max_degree`.
    pub fn build(lambda: (i64, i64), max_degree: usize) -> Self {
        assert!(lambda.0 >= 0 && lambda.1 >= 0, "weight must be dominant");
        let mut form = Form::new(lambda);
        let mut words: Vec<Vec<FWord>> = vec![];
        for d in 0..=max_degree {
            words.push(select_pivots(&mut form, d));
        }
        let weights = words
            .iter()
            .map(|ws| ws.iter().map(|w| word_weight(lambda, w)).collect())
            .collect();
        let mut module = HwModule {
            lambda,
            max_degree,
            words,
            weights,
            f_action: [vec![], vec![]],
            e_action: [vec![], vec![]],
            form,
        };
        for i in 0..2u8 {
            let mut f_tab = vec![];
            let mut e_tab = vec![];
            for d in 0..=max_degree {
                let mut f_row = vec![];
                let mut e_row = vec![];
                for b in 0..module.words[d].len() {
                    let mut elem = FreeElement::new();
                    elem.insert(module.words[d][b].clone(), RatFunc::one());
                    if d < max_degree {
                        let img = free_action(Generator::F(i), &elem, lambda);
                        f_row.push(module.express_free(&img, d + 1).expect("f image expressible"));
                    } else {
                        f_row.push(vec![]);
                    }
                    if d > 0 {
                        let img = free_action(Generator::E(i), &elem, lambda);
                        e_row.push(module.express_free(&img, d - 1).expect("e image expressible"));
                    } else {
                        e_row.push(vec![]);
                    }
                }
                f_tab.push(f_row);
                e_tab.push(e_row);
            }
            module.f_action[i as usize] = f_tab;
            module.e_action[i as usize] = e_tab;
        }
        module
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.words.get(degree).map(|w| w.len()).unwrap_or(0)
    }

    pub fn basis_words(&self, degree: usize) -> &[FWord] {
        &self.words[degree]
    }

    pub fn weight_of(&self, id: BasisId) -> (i64, i64) {
        self.weights[id.0][id.1]
    }

    /// Index of a pivot word at its degree, if it is one.
    pub fn index_of_word(&self, w: &FWord) -> Option<usize> {
        self.words[w.len()].iter().position(|x| x == w)
    }

    /// Express a free element of pure degree in the pivot basis; the
    /// coordinates are the unique ones agreeing with the element under
    /// the contravariant form (i.e. modulo the radical).
    pub fn express_free(&mut self, elem: &FreeElement, degree: usize) -> Result<Combination> {
        if degree > self.max_degree {
            return Err(Error::DegreeOverflow);
        }
        let pivots = self.words[degree].clone();
        if pivots.is_empty() {
            return Ok(vec![]);
        }
        // rhs_i = <pivot_i, elem>; solve Gram c = rhs.
        let mut rows = vec![];
        for (i, p) in pivots.iter().enumerate() {
            let mut cols = vec![];
            for (j, pj) in pivots.iter().enumerate() {
                let g = self.form.pair_words(p, pj);
                if !g.is_zero() {
                    cols.push((j, g));
                }
            }
            let mut rhs = RatFunc::zero();
            for (w, c) in elem {
                if w.len() != degree {
                    continue;
                }
                let g = self.form.pair_words(p, w);
                if !g.is_zero() {
                    rhs = rhs.add(&g.mul(c));
                }
            }
            let _ = i;
            rows.push((cols, rhs));
        }
        match solve(&rows, pivots.len()) {
            SolveOutcome::Unique(x) => Ok(x
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect()),
            _ => Err(Error::InconsistentSystem("Gram solve failed".into())),
        }
    }

    /// Action of a generator on a basis vector, as a combination at the
    /// appropriate degree. `T`/`TInv` return the eigenvalue combination.
    pub fn apply(&self, gen: Generator, id: BasisId) -> Result<Vec<(BasisId, RatFunc)>> {
        let (d, b) = id;
        match gen {
            Generator::F(i) => {
                if d >= self.max_degree {
                    return Err(Error::DegreeOverflow);
                }
                Ok(self.f_action[i as usize][d][b]
                    .iter()
                    .map(|(j, c)| ((d + 1, *j), c.clone()))
                    .collect())
            }
            Generator::E(i) => {
                if d == 0 {
                    return Ok(vec![]);
                }
                Ok(self.e_action[i as usize][d][b]
                    .iter()
                    .map(|(j, c)| ((d - 1, *j), c.clone()))
                    .collect())
            }
            Generator::T(i) => {
                let w = self.weights[d][b];
                let h = if i == 0 { w.0 } else { w.1 };
                Ok(vec![(id, RatFunc::q_pow(h))])
            }
            Generator::TInv(i) => {
                let w = self.weights[d][b];
                let h = if i == 0 { w.0 } else { w.1 };
                Ok(vec![(id, RatFunc::q_pow(-h))])
            }
        }
    }
}

/// Greedy maximal nondegenerate set of degree-`d` words under the form.
fn select_pivots(form: &mut Form, degree: usize) -> Vec<FWord> {
    let candidates = all_words(degree);
    let mut chosen: Vec<FWord> = vec![];
    // Incrementally row-reduce the Gram matrix of the chosen set.
    let mut reduced: Vec<Vec<RatFunc>> = vec![];
    for w in candidates {
        let mut trial = chosen.clone();
        trial.push(w.clone());
        let n = trial.len();
        let mut g = vec![vec![RatFunc::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = form.pair_words(&trial[i], &trial[j]);
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        if gram_rank(&g) == n {
            chosen = trial;
            reduced.clear();
        }
    }
    let _ = reduced;
    chosen
}

fn gram_rank(g: &[Vec<RatFunc>]) -> usize {
    let rows: Vec<Vec<(usize, RatFunc)>> = g
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect()
        })
        .collect();
    crate::linalg::rank(&rows, g.len())
}

/// Cache of built modules keyed by highest weight and depth. Modules
/// are immutable once built and shared by reference counting.
#[derive(Default)]
pub struct AlgebraCtx {
    modules: HashMap<((i64, i64), usize), std::rc::Rc<HwModule>>,
}

impl AlgebraCtx {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn module(&mut self, lambda: (i64, i64), max_degree: usize) -> std::rc::Rc<HwModule> {
        self.modules
            .entry((lambda, max_degree))
            .or_insert_with(|| std::rc::Rc::new(HwModule::build(lambda, max_degree)))
            .clone()
    }
}
