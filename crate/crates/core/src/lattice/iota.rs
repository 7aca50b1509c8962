//! The embedding of highest-weight vectors into path space: the
//! coefficient of a path is the stabilised ratio of half-transfer
//! matrix elements along ever longer ground-terminated chains at unit
//! spectral parameter.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::series::QSeries;
use crate::weight::WeightIndex;
use crate::xz::{x_matrix_at_one, XzCtx};

use super::path::{FinitePath, PathBoundary};

#[derive(Clone, Debug)]
pub struct IotaOutcome {
    /// The stabilised coefficient, valid through the requested order.
    pub value: QSeries,
    /// Chain length from which the value was order-stable.
    pub stable_from: usize,
}

/// Matrix cache for the unit-argument half-transfer steps, held as
/// truncated series at the working order.
pub struct IotaCtx<'a> {
    pub xz: &'a mut XzCtx,
    matrices: HashMap<((i64, i64), (i64, i64), i64, i64, i64), std::rc::Rc<Vec<Vec<QSeries>>>>,
}

impl<'a> IotaCtx<'a> {
    pub fn new(xz: &'a mut XzCtx) -> Self {
        Self { xz, matrices: HashMap::new() }
    }

    fn matrix(
        &mut self,
        xi: WeightIndex,
        eta: WeightIndex,
        a: i64,
        a_p: i64,
        order: i64,
    ) -> Result<std::rc::Rc<Vec<Vec<QSeries>>>> {
        let key = (xi.pairing(), eta.pairing(), a, a_p, order);
        if let Some(hit) = self.matrices.get(&key) {
            return Ok(hit.clone());
        }
        let exact = x_matrix_at_one(self.xz, xi, eta, a, a_p)?;
        let m = std::rc::Rc::new(
            exact
                .iter()
                .map(|row| row.iter().map(|v| v.to_series(order)).collect())
                .collect::<Vec<Vec<QSeries>>>(),
        );
        self.matrices.insert(key, m.clone());
        Ok(m)
    }

    /// Chain matrix element: start from `state` over the basis at
    /// `(xi, eta; p(1))`, apply `steps` transfer steps following the
    /// path (ground-extended beyond its window), and return the
    /// top-component of the final state.
    fn chain_top(
        &mut self,
        boundary: &PathBoundary,
        path: &FinitePath,
        state0: &[QSeries],
        steps: usize,
        order: i64,
    ) -> Result<QSeries> {
        let mut state = state0.to_vec();
        let mut eta = boundary.eta;
        for m in 1..=steps {
            let from = path_value(boundary, path, m);
            let to = path_value(boundary, path, m + 1);
            let mat = self.matrix(boundary.xi, eta, from, to, order)?;
            let mut next = vec![QSeries::zero(order); mat.len()];
            for (t, row) in mat.iter().enumerate() {
                let mut acc = QSeries::zero(order);
                for (s, v) in row.iter().enumerate() {
                    if !v.is_zero() && s < state.len() && !state[s].is_zero() {
                        acc = acc.add(&v.mul(&state[s]).truncate(order));
                    }
                }
                next[t] = acc;
            }
            state = next;
            eta = eta.sigma();
        }
        Ok(state.first().cloned().unwrap_or_else(|| QSeries::zero(order)))
    }
}

fn path_value(boundary: &PathBoundary, path: &FinitePath, l: usize) -> i64 {
    if l <= path.window() + 1 {
        path.at(l)
    } else {
        boundary.ground(l)
    }
}

/// Path coefficient of a basis vector of the highest-weight space at
/// `(xi, eta; lambda)`: the ratio of the path chain element to the
/// ground chain element, stabilised in the chain length at the given
/// series order.
pub fn iota_coeff(
    ictx: &mut IotaCtx,
    boundary: &PathBoundary,
    path: &FinitePath,
    source_basis_index: usize,
    order: i64,
) -> Result<IotaOutcome> {
    let src = ictx.xz.omega(boundary.xi, boundary.eta, boundary.lambda.a)?;
    let dim = src.len();
    let work = order + 2;
    let mut state0 = vec![QSeries::zero(work); dim];
    state0[source_basis_index] = QSeries::one(work);

    let ground_boundary = PathBoundary {
        xi: boundary.xi,
        eta: boundary.eta,
        lambda: WeightIndex::new(boundary.level(), boundary.ground(1)),
    };
    let ground_path = boundary.ground_path(0);
    let g_src = ictx
        .xz
        .omega(ground_boundary.xi, ground_boundary.eta, ground_boundary.lambda.a)?;
    let mut g_state = vec![QSeries::zero(work); g_src.len()];
    g_state[0] = QSeries::one(work);

    let deepest = boundary
        .defects(path)
        .last()
        .map(|d| d.0)
        .unwrap_or(1)
        .max(path_start_mismatch(boundary, path));
    let l_min = deepest + 1;
    let mut values: Vec<(usize, QSeries)> = vec![];
    for l in l_min..=l_min + 3 {
        let num = ictx.chain_top(boundary, path, &state0, l, work)?;
        let den = ictx.chain_top(&ground_boundary, &ground_path, &g_state, l, work)?;
        if den.is_zero() {
            return Err(Error::StabilizationFailure("vanishing ground chain".into()));
        }
        values.push((l, num.div(&den)?.truncate(order)));
    }
    // Stability: successive values agree to the requested order.
    for w in values.windows(2) {
        let ord = order.min(w[0].1.truncation_order()).min(w[1].1.truncation_order());
        if !w[0].1.eq_to_order(&w[1].1, ord) {
            return Err(Error::StabilizationFailure(format!(
                "chain values differ at order {order} for path {:?}",
                path.entries
            )));
        }
    }
    Ok(IotaOutcome { value: values[0].1.clone(), stable_from: values[0].0 })
}

fn path_start_mismatch(boundary: &PathBoundary, path: &FinitePath) -> usize {
    if path.at(1) != boundary.ground(1) {
        1
    } else {
        0
    }
}
