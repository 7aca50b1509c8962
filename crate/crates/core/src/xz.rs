//! The half-transfer and impurity operators on highest-weight spaces,
//! extracted by matching vertex-operator compositions against the
//! decomposition over a target basis of singular vectors.
//!
//! Both sides of the defining identification are expanded on exact
//! w-basis slots with explicit spectral powers; each matrix coefficient
//! is then a single spectral monomial whose power is the degree
//! difference of the vectors it connects, with an exact rational
//! function of `q` in front.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::algebra::free::Generator;
use crate::algebra::module::{AlgebraCtx, BasisId, HwModule};
use crate::algebra::omega::{omega_basis, OmegaBasis};
use crate::algebra::tensor::TensorElem;
use crate::error::{Error, Result};
use crate::face::{FaceConfig, WeightCtx};
use crate::linalg::{solve, SolveOutcome};
use crate::ratfunc::{q_bracket, RatFunc, ZRat};
use crate::series::{Monomial, QSeries};
use crate::vo::{eval_weight, type1_expand, type2_expand, Type1Expansion, Type2Block};
use crate::weight::WeightIndex;

/// Element of `module (x) spin-n/2 eval` with spectral-monomial
/// bookkeeping per slot.
#[derive(Clone, Debug, Default)]
struct ModEval {
    terms: BTreeMap<(BasisId, i64), ZRat>,
}

impl ModEval {
    fn add(&mut self, slot: (BasisId, i64), c: ZRat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(slot).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&slot);
        }
    }

    fn from_expansion(exp: &Type1Expansion) -> Self {
        let mut out = Self::default();
        for (&(id, m), r) in &exp.terms {
            out.add((id, m), ZRat::monomial(id.0 as i64, r.clone()));
        }
        out
    }

    /// Coproduct action of `f_i` with the module as first leg.
    fn apply_f(&self, i: u8, module: &HwModule, n: i64) -> Result<Self> {
        let mut out = Self::default();
        for (&(id, m), c) in &self.terms {
            let ew = eval_weight(n, m);
            let h = if i == 0 { ew.0 } else { ew.1 };
            let tfac = RatFunc::q_pow(-h);
            if id.0 < module.max_degree {
                for (id2, c2) in module.apply(Generator::F(i), id)? {
                    out.add((id2, m), c.scale(&tfac.mul(&c2)));
                }
            }
            let (m2, f) = if i == 1 {
                (m + 1, q_bracket(n - m))
            } else {
                (m - 1, q_bracket(m))
            };
            if (0..=n).contains(&m2) && !f.is_zero() {
                out.add((id, m2), c.mul(&ZRat::monomial(-1, f)));
            }
        }
        Ok(out)
    }

    fn apply_word(&self, word: &[u8], module: &HwModule, n: i64) -> Result<Self> {
        let mut cur = self.clone();
        for &i in word.iter().rev() {
            cur = cur.apply_f(i, module, n)?;
        }
        Ok(cur)
    }
}

/// Shared computation context for the level-`k` chain with unit fusion
/// in the vertical direction.
pub struct XzCtx {
    pub k: i64,
    pub alg: AlgebraCtx,
    /// Expansion depth for type-1 operators.
    pub d_exp: usize,
    /// Degree window for singular-vector bases.
    pub d_omega: usize,
    type1: HashMap<((i64, i64), (i64, i64), i64), Rc<Type1Expansion>>,
    type2: Option<Rc<Type2Block>>,
    omegas: HashMap<((i64, i64), (i64, i64), i64), Rc<OmegaBasis>>,
    delta_cache: HashMap<(usize, usize), Rc<TensorElem>>,
    x_cache: HashMap<((i64, i64), (i64, i64), i64, usize), Rc<BTreeMap<i64, OpColumn>>>,
}

impl XzCtx {
    pub fn new(k: i64) -> Self {
        Self {
            k,
            alg: AlgebraCtx::new(),
            d_exp: 4,
            d_omega: 3,
            type1: HashMap::new(),
            type2: None,
            omegas: HashMap::new(),
            delta_cache: HashMap::new(),
            x_cache: HashMap::new(),
        }
    }

    fn module_depth(&self) -> usize {
        self.d_exp + 1
    }

    pub fn type1(&mut self, lambda: WeightIndex, lambda_p: WeightIndex, n: i64) -> Result<Rc<Type1Expansion>> {
        let key = (lambda.pairing(), lambda_p.pairing(), n);
        if let Some(hit) = self.type1.get(&key) {
            return Ok(hit.clone());
        }
        let module = self.alg.module(lambda_p.pairing(), self.module_depth());
        let exp = Rc::new(type1_expand(lambda, lambda_p, n, module, self.d_exp)?);
        self.type1.insert(key, exp.clone());
        Ok(exp)
    }

    pub fn type2(&mut self) -> Result<Rc<Type2Block>> {
        if let Some(hit) = &self.type2 {
            return Ok(hit.clone());
        }
        let src = self.alg.module((1, 0), self.module_depth());
        let tgt = self.alg.module((0, 1), self.module_depth());
        let block = Rc::new(type2_expand(src, tgt, self.d_exp.min(4))?);
        self.type2 = Some(block.clone());
        Ok(block)
    }

    pub fn omega(&mut self, xi: WeightIndex, eta: WeightIndex, a: i64) -> Result<Rc<OmegaBasis>> {
        let target = WeightIndex::new(xi.level + eta.level, a).pairing();
        let key = (xi.pairing(), eta.pairing(), a);
        if let Some(hit) = self.omegas.get(&key) {
            return Ok(hit.clone());
        }
        let m1 = self.alg.module(xi.pairing(), self.module_depth());
        let m2 = self.alg.module(eta.pairing(), self.module_depth());
        let basis = Rc::new(omega_basis(&m1, &m2, target, self.d_omega)?);
        self.omegas.insert(key, basis.clone());
        Ok(basis)
    }

    /// The homomorphism image `Delta(word_b)(vector)` for a target basis
    /// vector of a singular-vector space, cached per (omega id, word).
    #[allow(clippy::too_many_arguments)]
    fn delta_word(
        &mut self,
        cache_tag: usize,
        word_id: usize,
        vector: &TensorElem,
        word: &[u8],
        m1: &HwModule,
        m2: &HwModule,
    ) -> Result<Rc<TensorElem>> {
        let key = (cache_tag, word_id);
        if let Some(hit) = self.delta_cache.get(&key) {
            return Ok(hit.clone());
        }
        let out = Rc::new(vector.apply_word_lossy(word, m1, m2)?);
        self.delta_cache.insert(key, out.clone());
        Ok(out)
    }
}

/// Coefficients of an operator applied to one source basis vector, as
/// `(target index, spectral monomial coefficient)`.
pub type OpColumn = Vec<(usize, ZRat)>;

/// Action of the half-transfer operator between singular-vector spaces:
/// source at `(xi, eta; a)`, target at `(xi, sigma(eta); a')`. The
/// defining decomposition runs over every admissible target block at
/// once, so all blocks are solved jointly and cached.
pub fn x_operator(
    ctx: &mut XzCtx,
    xi: WeightIndex,
    eta: WeightIndex,
    a: i64,
    a_p: i64,
    source_index: usize,
) -> Result<OpColumn> {
    let full = x_operator_all(ctx, xi, eta, a, source_index)?;
    Ok(full.get(&a_p).cloned().unwrap_or_default())
}

/// All target blocks of the half-transfer operator on one source basis
/// vector.
pub fn x_operator_all(
    ctx: &mut XzCtx,
    xi: WeightIndex,
    eta: WeightIndex,
    a: i64,
    source_index: usize,
) -> Result<Rc<BTreeMap<i64, OpColumn>>> {
    let key = (xi.pairing(), eta.pairing(), a, source_index);
    if let Some(hit) = ctx.x_cache.get(&key) {
        return Ok(hit.clone());
    }
    let k = ctx.k;
    let lambda = WeightIndex::new(k, a);
    let seta = eta.sigma();
    let source = ctx.omega(xi, eta, a)?;
    let depth = ctx.module_depth();
    let m_eta = ctx.alg.module(eta.pairing(), depth);
    let m_seta = ctx.alg.module(seta.pairing(), depth);
    let m_xi = ctx.alg.module(xi.pairing(), depth);
    let phi_eta = ctx.type1(eta, seta, 1)?;

    let src_vec = source.vectors[source_index].clone();
    let d_x = src_vec.degree as i64;

    // Left side: apply the eta-leg operator under each second-leg word.
    let base = ModEval::from_expansion(&phi_eta);
    let mut lhs: BTreeMap<(BasisId, BasisId, i64), ZRat> = BTreeMap::new();
    for ((ida, idb), c) in &src_vec.elem.terms {
        let word = m_eta.basis_words(idb.0)[idb.1].clone();
        let moved = base.apply_word(&word, &m_seta, 1)?;
        for (&(idc, m), z) in &moved.terms {
            let add = z.scale(c);
            if add.is_zero() {
                continue;
            }
            let e = lhs.entry((*ida, idc, m)).or_default();
            *e = e.add(&add);
        }
    }

    // Target blocks: every admissible a'.
    let mut blocks = vec![];
    for a_p in 0..=k {
        let lambda_p = WeightIndex::new(k, a_p);
        if !crate::weight::admissible((lambda, lambda_p), 1)? {
            continue;
        }
        let target = ctx.omega(xi, seta, a_p)?;
        let phi_lam = ctx.type1(lambda, lambda_p, 1)?;
        let m_lam_p = ctx.alg.module(lambda_p.pairing(), depth);
        blocks.push((a_p, target, phi_lam, m_lam_p));
    }
    let solved = assemble_and_solve(ctx, lhs, &blocks, &m_xi, &m_seta, d_x, |a_p| {
        omega_tag(xi, seta, a_p)
    })?;
    let out = Rc::new(solved);
    ctx.x_cache.insert(key, out.clone());
    Ok(out)
}

fn omega_tag(xi: WeightIndex, eta: WeightIndex, a: i64) -> usize {
    // Stable small tag for the delta cache.
    (((xi.level * 5 + xi.a) * 31 + eta.level * 5 + eta.a) * 31 + a) as usize
}

/// Shared matching step: express an LHS triple-slot expansion over the
/// union of target-block images, each pushed through its own type-1
/// expansion on the third leg. Returns one coefficient column per
/// block label.
fn assemble_and_solve(
    ctx: &mut XzCtx,
    lhs: BTreeMap<(BasisId, BasisId, i64), ZRat>,
    blocks: &[(i64, Rc<OmegaBasis>, Rc<Type1Expansion>, Rc<HwModule>)],
    m1: &HwModule,
    m2: &HwModule,
    d_x: i64,
    tag_of: impl Fn(i64) -> usize,
) -> Result<BTreeMap<i64, OpColumn>> {
    let t_cap = (ctx.d_exp.min(ctx.d_omega) as i64) - d_x;
    // Unknowns: (block, vector) pairs visible below the cap.
    let mut unknowns: Vec<(i64, usize, i64)> = vec![];
    for (label, target, _, _) in blocks {
        for (i, v) in target.vectors.iter().enumerate() {
            let t_i = v.degree as i64 - d_x;
            if t_i <= t_cap {
                unknowns.push((*label, i, t_i));
            }
        }
    }
    let mut rhs: BTreeMap<(BasisId, BasisId, i64, i64), Vec<(usize, RatFunc)>> = BTreeMap::new();
    for (col, &(label, i, t_i)) in unknowns.iter().enumerate() {
        let (_, target, phi_lam, m_lam_p) =
            blocks.iter().find(|(l, _, _, _)| *l == label).unwrap();
        let y = target.vectors[i].elem.clone();
        for (&(idb, m), r) in &phi_lam.terms {
            let zp = t_i + idb.0 as i64;
            if zp > t_cap {
                continue;
            }
            let word = m_lam_p.basis_words(idb.0)[idb.1].clone();
            let word_id = idb.0 * 64 + idb.1;
            let moved = ctx.delta_word(tag_of(label) * 131 + i, word_id, &y, &word, m1, m2)?;
            for ((ida, idc), c) in &moved.terms {
                rhs.entry((*ida, *idc, m, zp))
                    .or_default()
                    .push((col, r.mul(c)));
            }
        }
    }
    // Equations over all keys below the cap.
    let mut rows: Vec<(Vec<(usize, RatFunc)>, RatFunc)> = vec![];
    let mut keys: std::collections::BTreeSet<(BasisId, BasisId, i64, i64)> = rhs.keys().cloned().collect();
    for ((ida, idc, m), z) in &lhs {
        for (zp, _) in z.iter() {
            keys.insert((*ida, *idc, *m, *zp));
        }
    }
    for key in keys {
        let (ida, idc, m, zp) = key;
        if zp > t_cap {
            continue;
        }
        let mut rhs_now = RatFunc::zero();
        if let Some(z) = lhs.get(&(ida, idc, m)) {
            for (e, c) in z.iter() {
                if *e == zp {
                    rhs_now = c.clone();
                }
            }
        }
        let cols = rhs.get(&key).cloned().unwrap_or_default();
        if cols.is_empty() && rhs_now.is_zero() {
            continue;
        }
        if cols.is_empty() {
            return Err(Error::InconsistentSystem(format!(
                "left side has an unmatched slot ({:?}, {:?}, {m}) at power {zp}: {rhs_now}",
                ida, idc
            )));
        }
        rows.push((cols, rhs_now));
    }
    match solve(&rows, unknowns.len()) {
        SolveOutcome::Unique(x) => {
            let mut out: BTreeMap<i64, OpColumn> = BTreeMap::new();
            for (label, _, _, _) in blocks {
                out.insert(*label, vec![]);
            }
            for (col, v) in x.into_iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (label, i, t_i) = unknowns[col];
                out.get_mut(&label).unwrap().push((i, ZRat::monomial(t_i, v)));
            }
            Ok(out)
        }
        SolveOutcome::Underdetermined => Err(Error::InconsistentSystem(
            "matching system does not pin all coefficients".into(),
        )),
        SolveOutcome::Inconsistent => Err(Error::InconsistentSystem(
            "matching system has no solution".into(),
        )),
    }
}

/// The impurity operator block for the fixed configuration: source at
/// `(2L0, L0; 3L0)`, target at `(L1+L0, L1; lambda_2)`, obtained by the
/// two-stage composition through the type-2 block.
pub fn z_operator(ctx: &mut XzCtx, source_index: usize) -> Result<OpColumn> {
    assert_eq!(ctx.k, 3, "the impurity block is built at level 3");
    let xi = WeightIndex::new(2, 0);
    let eta = WeightIndex::new(1, 0);
    let xi_p = WeightIndex::new(2, 1);
    let lambda = WeightIndex::new(3, 0);
    let lambda_p = WeightIndex::new(3, 2);
    let source = ctx.omega(xi, eta, lambda.a)?;
    let target = ctx.omega(xi_p, WeightIndex::new(1, 1), lambda_p.a)?;
    let phi1 = ctx.type1(xi, xi_p, 1)?;
    let phi3 = ctx.type1(lambda, lambda_p, 2)?;
    let block = ctx.type2()?;
    let depth = ctx.module_depth();
    let m_xi_p = ctx.alg.module(xi_p.pairing(), depth);
    let m_l1 = ctx.alg.module((0, 1), depth);

    let src_vec = &source.vectors[source_index];
    let d_x = src_vec.degree as i64;

    // Stage 1: apply the first-leg operator under each first-leg word,
    // then push the second factor through the type-2 block.
    let base = ModEval::from_expansion(&phi1);
    let mut lhs: BTreeMap<(BasisId, BasisId, i64), ZRat> = BTreeMap::new();
    for ((ida, idb), c) in &src_vec.elem.terms {
        let word = {
            let m_xi = ctx.alg.module(xi.pairing(), depth);
            m_xi.basis_words(ida.0)[ida.1].clone()
        };
        let moved = base.apply_word(&word, &m_xi_p, 1)?;
        // moved: slots (b1, i) with spectral bookkeeping; now compose
        // with the images of (w_i (x) idb).
        for (&(idc, i), z) in &moved.terms {
            for ((b2, m), zp2, r2) in block.image(i, *idb) {
                let add = z.mul(&ZRat::monomial(zp2, r2)).scale(c);
                if add.is_zero() {
                    continue;
                }
                let e = lhs.entry((idc, b2, m)).or_default();
                *e = e.add(&add);
            }
        }
    }

    let m_lam_p = ctx.alg.module(lambda_p.pairing(), depth);
    let blocks = vec![(lambda_p.a, target, phi3, m_lam_p)];
    let solved = assemble_and_solve(ctx, lhs, &blocks, &m_xi_p, &m_l1, d_x, |a_p| {
        omega_tag(xi_p, WeightIndex::new(1, 1), a_p)
    })?;
    Ok(solved.get(&lambda_p.a).cloned().unwrap_or_default())
}

/// Exact matrix of the half-transfer operator at unit spectral
/// parameter: rows index the target basis, columns the source basis.
pub fn x_matrix_at_one(
    ctx: &mut XzCtx,
    xi: WeightIndex,
    eta: WeightIndex,
    a: i64,
    a_p: i64,
) -> Result<Vec<Vec<RatFunc>>> {
    let n_src = ctx.omega(xi, eta, a)?.len();
    let n_tgt = ctx.omega(xi, eta.sigma(), a_p)?.len();
    let mut m = vec![vec![RatFunc::zero(); n_src]; n_tgt];
    for s in 0..n_src {
        for (t, z) in x_operator(ctx, xi, eta, a, a_p, s)? {
            m[t][s] = z.eval_zeta_one();
        }
    }
    Ok(m)
}

/// Commutation relation of two half-transfer steps against the unit
/// fusion connection coefficients, checked on one source vector as a
/// series identity in the spectral ratio.
pub fn x_commutation_check(
    ctx: &mut XzCtx,
    wctx: &mut WeightCtx,
    xi: WeightIndex,
    eta: WeightIndex,
    a: i64,
    a_p: i64,
    a_pp: i64,
    source_index: usize,
    order: i64,
) -> Result<bool> {
    let k = ctx.k;
    let target = ctx.omega(xi, eta, a_pp)?;
    let n_tgt = target.len();
    let mut lhs_acc: Vec<QSeries> = vec![QSeries::zero(order); n_tgt];
    let mut rhs_acc: Vec<QSeries> = vec![QSeries::zero(order); n_tgt];
    // Left: sum over intermediates with the connection coefficient at
    // the spectral ratio; the first factor runs at zeta_2 (ratio-free),
    // the second at zeta_1 (ratio powers).
    for a_mid in 0..=k {
        let quad = (
            WeightIndex::new(k, a),
            WeightIndex::new(k, a_mid),
            WeightIndex::new(k, a_p),
            WeightIndex::new(k, a_pp),
        );
        let Ok(cfg) = FaceConfig::new(quad.0, quad.1, quad.2, quad.3, 1, 1) else {
            continue;
        };
        let c = wctx.conn_n1_at(&cfg, &Monomial::zeta(), order)?;
        // X_{mid}^{a''}(z1) X_a^{mid}(z2) on the source vector.
        let first = x_operator(ctx, xi, eta, a, a_mid, source_index)?;
        for (midx, z2coef) in first {
            let inner = z2coef.eval_zeta_one(); // zeta_2 powers drop out
            let second = x_operator(ctx, xi, eta.sigma(), a_mid, a_pp, midx)?;
            for (tidx, z1coef) in second {
                let contrib = z1coef.to_series(order).scale_zeta(&crate::zeta::ZetaPoly::one());
                let term = c
                    .mul(&contrib)
                    .mul(&inner.to_series(order))
                    .truncate(order);
                lhs_acc[tidx] = lhs_acc[tidx].add(&term);
            }
        }
    }
    // Right: X_{a'}^{a''}(z2) X_a^{a'}(z1).
    let first = x_operator(ctx, xi, eta, a, a_p, source_index)?;
    for (midx, z1coef) in first {
        let second = x_operator(ctx, xi, eta.sigma(), a_p, a_pp, midx)?;
        for (tidx, z2coef) in second {
            let term = z1coef
                .to_series(order)
                .mul(&z2coef.eval_zeta_one().to_series(order))
                .truncate(order);
            rhs_acc[tidx] = rhs_acc[tidx].add(&term);
        }
    }
    for (l, r) in lhs_acc.iter().zip(rhs_acc.iter()) {
        let ord = order.min(l.truncation_order()).min(r.truncation_order());
        if !l.eq_to_order(r, ord) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::q_integer;

    fn w(level: i64, a: i64) -> WeightIndex {
        WeightIndex::new(level, a)
    }

    #[test]
    fn x_on_ground_vector() {
        // The first chain step: coefficient 1 on the lowest target
        // vector and z^2 (q^3 + O(q^7)) on the next; the exact value is
        // z^2 [2]/[5].
        let mut ctx = XzCtx::new(3);
        let col = x_operator(&mut ctx, w(2, 0), w(1, 0), 0, 1, 0).unwrap();
        let mut by_idx: BTreeMap<usize, ZRat> = col.into_iter().collect();
        assert_eq!(by_idx.remove(&0), Some(ZRat::monomial(0, RatFunc::one())));
        let c2 = by_idx.remove(&1).unwrap();
        let want = ZRat::monomial(2, q_integer(2).div(&q_integer(5)));
        assert_eq!(c2, want);
        // As a series: z^2 q^3 through order q^3.
        let s = c2.to_series(9);
        assert_eq!(
            s.truncate(7),
            QSeries::monomial(Monomial::new(crate::num::rat(1, 1), 6, 2), 7)
        );
    }

    #[test]
    fn z_on_ground_vector() {
        // Coefficient 1 on the lowest target vector and
        // z^2 [2]/([4][3]-[2]) on the next.
        let mut ctx = XzCtx::new(3);
        let col = z_operator(&mut ctx, 0).unwrap();
        let mut by_idx: BTreeMap<usize, ZRat> = col.into_iter().collect();
        assert_eq!(by_idx.remove(&0), Some(ZRat::monomial(0, RatFunc::one())));
        let want = q_integer(2).div(&q_integer(4).mul(&q_integer(3)).sub(&q_integer(2)));
        assert_eq!(by_idx.remove(&1), Some(ZRat::monomial(2, want)));
    }
}
