//! Perturbative vertex-operator expansions.
//!
//! A type-1 operator `V(lambda) -> V(lambda') (x) V^{(N)}` is the unique
//! highest-weight vector of weight `lambda` in the target, solved degree
//! by degree from the raising-operator conditions and normalised so the
//! leading term is the bare `v_{lambda'} (x) u_j`.
//!
//! Everything is expressed on the rescaled evaluation basis
//! `w_m = u_m / c_m`, on which all generator coefficients are rational
//! in `q` and carry one explicit spectral power per move; a term on
//! `(basis b (x) w_m)` implicitly carries `zeta^{deg b}`. The square
//! roots of the principal basis change enter only when converting to
//! the `u`-basis for display.
//!
//! The type-2 block `V^{(1)} (x) V(L0) -> V(L1) (x) V^{(2)}` is solved
//! globally: unknown images for every source slot, intertwining
//! equations for all four generator pairs, one normalisation pin.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::algebra::free::Generator;
use crate::algebra::module::{BasisId, HwModule};
use crate::error::{Error, Result};
use crate::linalg::{solve, SolveOutcome};
use crate::ratfunc::{q_bracket, q_binomial, RatFunc, ZRat};
use crate::series::QSeries;
use crate::weight::{admissible, WeightIndex};

/// Eval-leg weight pairings for `w_m` in the spin-`N/2` module.
pub fn eval_weight(n: i64, m: i64) -> (i64, i64) {
    (2 * m - n, n - 2 * m)
}

/// Expansion of a type-1 operator applied to the highest-weight vector.
#[derive(Clone)]
pub struct Type1Expansion {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub n: i64,
    /// Leading eval index from the weight rule.
    pub j: i64,
    pub max_degree: usize,
    /// `(module basis id, eval index) -> rational coefficient`, with an
    /// implicit spectral power equal to the basis degree.
    pub terms: BTreeMap<(BasisId, i64), RatFunc>,
    pub target_module: Rc<HwModule>,
}

impl Type1Expansion {
    /// Coefficient on the `u`-basis as a truncated series, including the
    /// square-root basis-change factor and the spectral power.
    pub fn u_basis_coefficient(&self, id: BasisId, m: i64, order: i64) -> Result<QSeries> {
        let Some(r) = self.terms.get(&(id, m)) else {
            return Ok(QSeries::zero(order));
        };
        let cj_over_cm = c_factor(self.n, self.j, order + 40)?
            .div(&c_factor(self.n, m, order + 40)?)?;
        Ok(r
            .to_series(order + 20)
            .mul(&cj_over_cm)
            .mul_monomial(&crate::series::Monomial::new(
                crate::num::rat_int(1),
                0,
                id.0 as i64,
            ))
            .truncate(order))
    }
}

/// `c_m = binom(N, m)^{1/2} q^{m(N-m)/2}` as a series.
pub fn c_factor(n: i64, m: i64, order: i64) -> Result<QSeries> {
    let b = q_binomial(n, m).to_series(order + 20).sqrt()?;
    Ok(b.mul_monomial(&crate::series::Monomial::u_pow(m * (n - m))))
}

/// The forced eval index of a module basis vector inside a singular
/// vector of weight `lambda`, if any.
fn forced_m(module: &HwModule, id: BasisId, n: i64, lambda: (i64, i64)) -> Option<i64> {
    let w = module.weight_of(id);
    // lambda.1 = w.1 + (n - 2m) and lambda.0 = w.0 - (n - 2m).
    let t = w.1 + n - lambda.1;
    if t % 2 != 0 {
        return None;
    }
    let m = t / 2;
    if !(0..=n).contains(&m) {
        return None;
    }
    if w.0 + 2 * m - n != lambda.0 {
        return None;
    }
    Some(m)
}

/// Solve the expansion of the type-1 operator for `(lambda, lambda')`
/// with an `N`-dimensional evaluation leg, to the given degree.
pub fn type1_expand(
    lambda: WeightIndex,
    lambda_p: WeightIndex,
    n: i64,
    target_module: Rc<HwModule>,
    max_degree: usize,
) -> Result<Type1Expansion> {
    if !admissible((lambda, lambda_p), n)? {
        return Err(Error::InadmissiblePair(format!(
            "({}, {}) is not {n}-admissible",
            lambda.a, lambda_p.a
        )));
    }
    assert_eq!(target_module.lambda, lambda_p.pairing(), "module mismatch");
    assert!(target_module.max_degree >= max_degree, "module too shallow");
    let lam = lambda.pairing();
    let j = (lambda_p.a + n - lambda.a) / 2;
    let mut terms: BTreeMap<(BasisId, i64), RatFunc> = BTreeMap::new();
    terms.insert(((0, 0), j), RatFunc::one());

    for d in 0..max_degree {
        // Unknown slots at degree d + 1.
        let mut unknowns: Vec<(BasisId, i64)> = vec![];
        for idx in 0..target_module.dim(d + 1) {
            if let Some(m) = forced_m(&target_module, (d + 1, idx), n, lam) {
                unknowns.push(((d + 1, idx), m));
            }
        }
        // Equations keyed by (degree-d basis index, eval index).
        let mut eqs: BTreeMap<(usize, i64), (Vec<(usize, RatFunc)>, RatFunc)> = BTreeMap::new();
        for i in 0..2u8 {
            // Raising contributions of the unknowns.
            for (col, ((du, idxu), mu)) in unknowns.iter().enumerate() {
                for ((dt, idxt), c) in target_module.apply(Generator::E(i), (*du, *idxu))? {
                    debug_assert_eq!(dt, d);
                    eqs.entry((idxt, *mu)).or_default().0.push((col, c));
                }
            }
            // Eval-leg contributions of the known degree-d terms.
            for idx in 0..target_module.dim(d) {
                let Some(m_src) = forced_m(&target_module, (d, idx), n, lam) else {
                    continue;
                };
                let Some(r) = terms.get(&((d, idx), m_src)) else {
                    continue;
                };
                let wb = target_module.weight_of((d, idx));
                let (m_target, factor, h) = match i {
                    1 => (m_src - 1, q_bracket(m_src), wb.1),
                    _ => (m_src + 1, q_bracket(n - m_src), wb.0),
                };
                if factor.is_zero() || !(0..=n).contains(&m_target) {
                    continue;
                }
                let contribution = RatFunc::q_pow(h).mul(&factor).mul(r);
                let entry = eqs.entry((idx, m_target)).or_default();
                entry.1 = entry.1.add(&contribution);
            }
        }
        let rows: Vec<(Vec<(usize, RatFunc)>, RatFunc)> = eqs
            .into_values()
            .map(|(cols, rhs)| (cols, rhs.neg()))
            .collect();
        if unknowns.is_empty() {
            if rows.iter().any(|(cols, rhs)| cols.is_empty() && !rhs.is_zero()) {
                return Err(Error::NoSolution(format!("degree {} has stranded terms", d + 1)));
            }
            continue;
        }
        match solve(&rows, unknowns.len()) {
            SolveOutcome::Unique(x) => {
                for (col, v) in x.into_iter().enumerate() {
                    if !v.is_zero() {
                        terms.insert(unknowns[col], v);
                    }
                }
            }
            SolveOutcome::Underdetermined => {
                return Err(Error::NonUniqueSolution(format!(
                    "type-1 expansion at degree {}",
                    d + 1
                )))
            }
            SolveOutcome::Inconsistent => {
                return Err(Error::NoSolution(format!("type-1 expansion at degree {}", d + 1)))
            }
        }
    }
    Ok(Type1Expansion {
        source: lam,
        target: lambda_p.pairing(),
        n,
        j,
        max_degree,
        terms,
        target_module,
    })
}

/// Solution of the type-2 block: for every source slot `(i, b)` of
/// `V^{(1)} (x) V(L0)`, the image in `V(L1) (x) V^{(2)}` on w-basis
/// slots, whose implicit spectral power is `deg(target) - deg(source)`.
#[derive(Clone)]
pub struct Type2Block {
    pub max_degree: usize,
    pub images: BTreeMap<(i64, BasisId), BTreeMap<(BasisId, i64), RatFunc>>,
    pub source_module: Rc<HwModule>,
    pub target_module: Rc<HwModule>,
}

pub fn type2_expand(
    source_module: Rc<HwModule>,
    target_module: Rc<HwModule>,
    max_degree: usize,
) -> Result<Type2Block> {
    assert_eq!(source_module.lambda, (1, 0));
    assert_eq!(target_module.lambda, (0, 1));
    let n_out = 2i64;
    let src_cap = max_degree.min(source_module.max_degree);
    let target_cap = max_degree.min(target_module.max_degree);
    let mut sources: Vec<(i64, BasisId)> = vec![];
    for i in 0..=1i64 {
        for d in 0..=src_cap {
            for idx in 0..source_module.dim(d) {
                sources.push((i, (d, idx)));
            }
        }
    }
    let src_weight = |i: i64, id: BasisId| -> (i64, i64) {
        let w = source_module.weight_of(id);
        let e = eval_weight(1, i);
        (w.0 + e.0, w.1 + e.1)
    };
    // Unknown layout: (source, target slot) -> column.
    let mut columns: Vec<((i64, BasisId), (BasisId, i64))> = vec![];
    let mut by_source: BTreeMap<(i64, BasisId), Vec<(usize, (BasisId, i64))>> = BTreeMap::new();
    for &(i, b) in &sources {
        let w = src_weight(i, b);
        for d in 0..=target_cap {
            for idx in 0..target_module.dim(d) {
                let tw = target_module.weight_of((d, idx));
                let t = tw.1 + n_out - w.1;
                if t % 2 != 0 {
                    continue;
                }
                let m = t / 2;
                if !(0..=n_out).contains(&m) || tw.0 + 2 * m - n_out != w.0 {
                    continue;
                }
                by_source
                    .entry((i, b))
                    .or_default()
                    .push((columns.len(), ((d, idx), m)));
                columns.push(((i, b), ((d, idx), m)));
            }
        }
    }

    let mut rows: Vec<(Vec<(usize, RatFunc)>, RatFunc)> = vec![];
    for &(i, b) in &sources {
        for g in [Generator::E(0), Generator::E(1), Generator::F(0), Generator::F(1)] {
            if matches!(g, Generator::F(_)) && b.0 + 1 > src_cap {
                continue;
            }
            // Equation rows keyed by (target slot, zeta power).
            let mut eq: BTreeMap<((BasisId, i64), i64), Vec<(usize, RatFunc)>> = BTreeMap::new();
            // Left side: Phi applied to the source action of g.
            let wb = source_module.weight_of(b);
            let mut lhs_terms: Vec<(i64, BasisId, i64, RatFunc)> = vec![];
            match g {
                Generator::E(1) => {
                    if i == 1 {
                        lhs_terms.push((0, b, 1, q_bracket(1)));
                    }
                    for (b2, c) in source_module.apply(Generator::E(1), b)? {
                        lhs_terms.push((i, b2, 0, RatFunc::q_pow(1 - 2 * i).mul(&c)));
                    }
                }
                Generator::E(0) => {
                    if i == 0 {
                        lhs_terms.push((1, b, 1, q_bracket(1)));
                    }
                    for (b2, c) in source_module.apply(Generator::E(0), b)? {
                        lhs_terms.push((i, b2, 0, RatFunc::q_pow(2 * i - 1).mul(&c)));
                    }
                }
                Generator::F(1) => {
                    if i == 0 {
                        lhs_terms.push((1, b, -1, RatFunc::q_pow(-wb.1)));
                    }
                    for (b2, c) in source_module.apply(Generator::F(1), b)? {
                        lhs_terms.push((i, b2, 0, c));
                    }
                }
                Generator::F(0) => {
                    if i == 1 {
                        lhs_terms.push((0, b, -1, RatFunc::q_pow(-wb.0)));
                    }
                    for (b2, c) in source_module.apply(Generator::F(0), b)? {
                        lhs_terms.push((i, b2, 0, c));
                    }
                }
                _ => unreachable!(),
            }
            for (i2, b2, zoff, c) in lhs_terms {
                if c.is_zero() {
                    continue;
                }
                for (col, (slot, m)) in by_source.get(&(i2, b2)).cloned().unwrap_or_default() {
                    let zp = slot.0 as i64 - b2.0 as i64 + zoff;
                    eq.entry(((slot, m), zp)).or_default().push((col, c.clone()));
                }
            }
            // Right side, negated: the coproduct action on the image.
            let base_deg = b.0 as i64;
            for (col, ((d, idx), m)) in by_source.get(&(i, b)).cloned().unwrap_or_default() {
                let zslot = d as i64 - base_deg;
                let tw = target_module.weight_of((d, idx));
                match g {
                    Generator::E(ii) => {
                        for (b2, c) in target_module.apply(Generator::E(ii), (d, idx))? {
                            eq.entry(((b2, m), zslot)).or_default().push((col, c.neg()));
                        }
                        let h = if ii == 0 { tw.0 } else { tw.1 };
                        let (m2, f) = if ii == 1 {
                            (m - 1, q_bracket(m))
                        } else {
                            (m + 1, q_bracket(n_out - m))
                        };
                        if (0..=n_out).contains(&m2) && !f.is_zero() {
                            eq.entry((((d, idx), m2), zslot + 1))
                                .or_default()
                                .push((col, RatFunc::q_pow(h).mul(&f).neg()));
                        }
                    }
                    Generator::F(ii) => {
                        if d < target_cap {
                            let ew = eval_weight(n_out, m);
                            let h = if ii == 0 { ew.0 } else { ew.1 };
                            for (b2, c) in target_module.apply(Generator::F(ii), (d, idx))? {
                                eq.entry(((b2, m), zslot))
                                    .or_default()
                                    .push((col, RatFunc::q_pow(-h).mul(&c).neg()));
                            }
                        }
                        let (m2, f) = if ii == 1 {
                            (m + 1, q_bracket(n_out - m))
                        } else {
                            (m - 1, q_bracket(m))
                        };
                        if (0..=n_out).contains(&m2) && !f.is_zero() {
                            eq.entry((((d, idx), m2), zslot - 1))
                                .or_default()
                                .push((col, f.neg()));
                        }
                    }
                    _ => unreachable!(),
                }
            }
            for (((slot, _m), _zp), cols) in eq {
                // Raising equations at the top tracked degree receive
                // feed-down from untracked deeper slots; drop those keys.
                if matches!(g, Generator::E(_)) && slot.0 == target_cap {
                    continue;
                }
                rows.push((cols, RatFunc::zero()));
            }
        }
    }
    let norm_col = columns
        .iter()
        .position(|&(src, slot)| src == (1, (0, 0)) && slot == ((0, 0), 2))
        .ok_or_else(|| Error::NoSolution("missing normalisation slot".into()))?;
    rows.push((vec![(norm_col, RatFunc::one())], RatFunc::one()));

    match solve(&rows, columns.len()) {
        SolveOutcome::Unique(x) => {
            let mut images: BTreeMap<(i64, BasisId), BTreeMap<(BasisId, i64), RatFunc>> =
                BTreeMap::new();
            for (col, v) in x.into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (src, slot) = columns[col];
                images.entry(src).or_default().insert(slot, v);
            }
            Ok(Type2Block { max_degree, images, source_module, target_module })
        }
        SolveOutcome::Underdetermined => Err(Error::NonUniqueSolution("type-2 block".into())),
        SolveOutcome::Inconsistent => Err(Error::NoSolution("type-2 block".into())),
    }
}

impl Type2Block {
    /// Image of a source slot as `(target slot, zeta power, coeff)`.
    pub fn image(&self, i: i64, b: BasisId) -> Vec<((BasisId, i64), i64, RatFunc)> {
        let Some(map) = self.images.get(&(i, b)) else {
            return vec![];
        };
        map.iter()
            .map(|(&(slot, m), c)| ((slot, m), slot.0 as i64 - b.0 as i64, c.clone()))
            .collect()
    }

    pub fn image_zrat(&self, i: i64, b: BasisId) -> BTreeMap<(BasisId, i64), ZRat> {
        let mut out = BTreeMap::new();
        for ((slot, m), zp, c) in self.image(i, b) {
            out.insert((slot, m), ZRat::monomial(zp, c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::module::AlgebraCtx;
    use crate::ratfunc::q_integer;

    fn w(level: i64, a: i64) -> WeightIndex {
        WeightIndex::new(level, a)
    }

    #[test]
    fn level_one_expansion_first_terms() {
        // Leading terms of the basic level-1 operator: coefficient 1 on
        // (v, u_1), then -q on (f_1 v, u_0), then q^3/[2], -q^4/[2].
        let mut ctx = AlgebraCtx::new();
        let target = ctx.module((0, 1), 5);
        let exp = type1_expand(w(1, 0), w(1, 1), 1, target.clone(), 4).unwrap();
        assert_eq!(exp.j, 1);
        assert_eq!(exp.terms.get(&((0, 0), 1)), Some(&RatFunc::one()));
        let f1 = target.index_of_word(&vec![1u8]).unwrap();
        assert_eq!(exp.terms.get(&((1, f1), 0)), Some(&RatFunc::q_pow(1).neg()));
        let f0f1 = target.index_of_word(&vec![0u8, 1u8]).unwrap();
        assert_eq!(
            exp.terms.get(&((2, f0f1), 1)),
            Some(&RatFunc::q_pow(3).div(&q_integer(2)))
        );
        let f1f0f1 = target.index_of_word(&vec![1u8, 0u8, 1u8]).unwrap();
        assert_eq!(
            exp.terms.get(&((3, f1f0f1), 0)),
            Some(&RatFunc::q_pow(4).div(&q_integer(2)).neg())
        );
    }

    #[test]
    fn inadmissible_pair_is_rejected() {
        let mut ctx = AlgebraCtx::new();
        let target = ctx.module((1, 0), 3);
        assert!(matches!(
            type1_expand(w(1, 0), w(1, 0), 1, target, 2),
            Err(Error::InadmissiblePair(_))
        ));
    }

    #[test]
    fn raising_residual_vanishes_on_a_slot() {
        // Spot-check of the defining system: the degree-1 coefficient
        // cancels the eval move of the leading term under e_1.
        let mut ctx = AlgebraCtx::new();
        let target = ctx.module((2, 1), 5);
        let exp = type1_expand(w(3, 0), w(3, 1), 1, target.clone(), 4).unwrap();
        let f1 = target.index_of_word(&vec![1u8]).unwrap();
        let r1 = exp.terms.get(&((1, f1), 0)).unwrap();
        let lead = exp.terms.get(&((0, 0), 1)).unwrap();
        let e1_coeff = target
            .apply(Generator::E(1), (1, f1))
            .unwrap()
            .into_iter()
            .find(|((dd, ii), _)| (*dd, *ii) == (0, 0))
            .unwrap()
            .1;
        let h = target.weight_of((0, 0)).1;
        let residual = e1_coeff.mul(r1).add(&RatFunc::q_pow(h).mul(&q_bracket(1)).mul(lead));
        assert!(residual.is_zero());
    }

    #[test]
    fn spin_one_expansion_rationalised_coefficients() {
        // The spin-1 leg at level 3: -q^2 on (f_1 v, w_1) and q^2/[2] on
        // (f_1 f_1 v, w_0) once the square roots are absorbed.
        let mut ctx = AlgebraCtx::new();
        let target = ctx.module((1, 2), 5);
        let exp = type1_expand(w(3, 0), w(3, 2), 2, target.clone(), 4).unwrap();
        assert_eq!(exp.j, 2);
        let f1 = target.index_of_word(&vec![1u8]).unwrap();
        assert_eq!(exp.terms.get(&((1, f1), 1)), Some(&RatFunc::q_pow(2).neg()));
        let f1f1 = target.index_of_word(&vec![1u8, 1u8]).unwrap();
        assert_eq!(
            exp.terms.get(&((2, f1f1), 0)),
            Some(&RatFunc::q_pow(2).div(&q_integer(2)))
        );
    }

    #[test]
    fn type2_block_solves_uniquely() {
        let mut ctx = AlgebraCtx::new();
        let src = ctx.module((1, 0), 4);
        let tgt = ctx.module((0, 1), 4);
        let block = type2_expand(src, tgt.clone(), 4).unwrap();
        let p1 = block.images.get(&(1, (0, 0))).unwrap();
        assert_eq!(p1.get(&((0, 0), 2)), Some(&RatFunc::one()));
        let p0 = block.images.get(&(0, (0, 0))).unwrap();
        assert_eq!(p0.get(&((0, 0), 1)), Some(&RatFunc::one()));
        let f1 = tgt.index_of_word(&vec![1u8]).unwrap();
        assert_eq!(p1.get(&((1, f1), 1)), Some(&RatFunc::q_pow(2).neg()));
        assert_eq!(p0.get(&((1, f1), 0)), Some(&RatFunc::q_pow(1).neg()));
        let f0f1 = tgt.index_of_word(&vec![0u8, 1u8]).unwrap();
        assert_eq!(
            p1.get(&((2, f0f1), 2)),
            Some(&RatFunc::q_pow(4).div(&q_integer(2)))
        );
        assert_eq!(
            p0.get(&((2, f0f1), 1)),
            Some(&RatFunc::q_pow(4).div(&q_integer(2)))
        );
    }
}
