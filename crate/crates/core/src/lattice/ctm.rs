//! The renormalised corner-transfer Hamiltonian and its perturbative
//! ground state on a finite window.
//!
//! The Hamiltonian acts on a path through spectral derivatives of the
//! unit-fusion weights at unit argument: straight triples are killed,
//! and a triple `(a, a+-1, a)` receives a diagonal bend coefficient
//! plus a flip term. The additive constant is fixed site by site so
//! that the ground-state eigenvalue vanishes with unit overlap on the
//! ground path.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::face::{classify_w11, FaceConfig, W11Kind, WeightCtx};
use crate::series::{Monomial, QSeries};
use crate::weight::WeightIndex;

use super::path::{enumerate_paths, FinitePath, PathBoundary, PathVector};

/// Spectral derivatives at unit argument of the unnormalised flip and
/// bend weights, indexed by `(a, up)`.
pub struct CtmCoefficients {
    pub flip: HashMap<(i64, bool), QSeries>,
    pub bend: HashMap<(i64, bool), QSeries>,
    pub k: i64,
}

pub fn ctm_coefficients(wctx: &mut WeightCtx, order: i64) -> Result<CtmCoefficients> {
    let k = wctx.k;
    let mut flip = HashMap::new();
    let mut bend = HashMap::new();
    for a in 0..=k {
        for up in [true, false] {
            let m = if up { a + 1 } else { a - 1 };
            if !(0..=k).contains(&m) {
                continue;
            }
            let w = |x: i64| WeightIndex::new(k, x);
            let bend_cfg = FaceConfig::new(w(a), w(m), w(m), w(a), 1, 1)?;
            debug_assert!(matches!(classify_w11(&bend_cfg)?, W11Kind::Bend { .. }));
            let b = wctx
                .w11_bar_at(&bend_cfg, &Monomial::zeta(), order)?
                .zeta_derivative_at_one();
            bend.insert((a, up), b);
            let mp = if up { a - 1 } else { a + 1 };
            if (0..=k).contains(&mp) {
                let flip_cfg = FaceConfig::new(w(a), w(m), w(mp), w(a), 1, 1)?;
                let f = wctx
                    .w11_bar_at(&flip_cfg, &Monomial::zeta(), order)?
                    .zeta_derivative_at_one();
                flip.insert((a, up), f);
            }
        }
    }
    Ok(CtmCoefficients { flip, bend, k })
}

enum TripleKind {
    Straight,
    Bend { a: i64, up: bool },
}

fn triple_kind(p2: i64, p1: i64, p0: i64) -> TripleKind {
    if p2 == p0 {
        TripleKind::Bend { a: p0, up: p1 == p0 + 1 }
    } else {
        TripleKind::Straight
    }
}

/// Action of the local operator at face `l` on a path vector: zero on
/// straight triples, bend-diagonal plus flip otherwise.
pub fn ctm_local(
    coeffs: &CtmCoefficients,
    l: usize,
    pv: &PathVector,
    order: i64,
) -> PathVector {
    let mut out = PathVector::new();
    for (p, c) in &pv.terms {
        if l + 2 > p.window() + 1 {
            continue;
        }
        match triple_kind(p.at(l + 2), p.at(l + 1), p.at(l)) {
            TripleKind::Straight => {}
            TripleKind::Bend { a, up } => {
                if let Some(b) = coeffs.bend.get(&(a, up)) {
                    out.add(p.clone(), c.mul(b).truncate(order));
                }
                let flipped_val = if up { a - 1 } else { a + 1 };
                if (0..=coeffs.k).contains(&flipped_val) {
                    if let Some(f) = coeffs.flip.get(&(a, up)) {
                        let mut q = p.clone();
                        q.entries[l] = flipped_val;
                        out.add(q, c.mul(f).truncate(order));
                    }
                }
            }
        }
    }
    out
}

/// Ground state of the window Hamiltonian, solved order by order in `q`
/// with the site constants rebuilt from the current estimate. Returns a
/// path vector with unit ground-path coefficient; `q_order` counts
/// powers of `q`, and the series are exact through `u^{2 q_order}`.
pub fn solve_vacuum(
    wctx: &mut WeightCtx,
    boundary: &PathBoundary,
    window: usize,
    q_order: i64,
) -> Result<PathVector> {
    let defect_bound = q_order as usize;
    let trunc = 2 * q_order + 1;
    let coeffs = ctm_coefficients(wctx, trunc + 4)?;
    let paths = enumerate_paths(window, boundary, 1, defect_bound);
    let ground = boundary.ground_path(window);
    assert!(paths.contains(&ground), "ground path missing from the window");

    let mut vac = PathVector::new();
    vac.add(ground.clone(), QSeries::one(trunc));

    // Diagonal normaliser per path: the q^0 part of the straight-site
    // deficit, an integer counting the straight triples with weights.
    let diag_q0 = |p: &FinitePath| -> i64 {
        let mut acc = 0i64;
        for l in 1..=p.window() - 1 {
            if matches!(triple_kind(p.at(l + 2), p.at(l + 1), p.at(l)), TripleKind::Straight) {
                acc += l as i64;
            }
        }
        acc
    };

    for _iter in 0..=(trunc as usize + 2) {
        let residual = hamiltonian_apply(&coeffs, boundary, &vac, window, trunc)?;
        let mut worst = trunc;
        let mut updates: Vec<(FinitePath, QSeries)> = vec![];
        for p in &paths {
            if *p == ground {
                continue;
            }
            if let Some(r) = residual.coeff(p) {
                if r.is_zero() {
                    continue;
                }
                worst = worst.min(r.valuation());
                let d = diag_q0(p);
                assert!(d > 0, "vanishing diagonal for {:?}", p.entries);
                updates.push((
                    p.clone(),
                    r.scale(&crate::num::rat(-1, d)).truncate(trunc),
                ));
            }
        }
        if updates.is_empty() {
            break;
        }
        for (p, delta) in updates {
            vac.add(p, delta);
        }
        let _ = worst;
    }
    // Converged when the residual vanishes to the working order.
    let residual = hamiltonian_apply(&coeffs, boundary, &vac, window, trunc)?;
    for p in &paths {
        if *p == ground {
            continue;
        }
        if let Some(r) = residual.coeff(p) {
            if !r.is_zero() && r.valuation() < trunc - 1 {
                return Err(Error::StabilizationFailure(format!(
                    "vacuum residual {} at {:?}",
                    r, p.entries
                )));
            }
        }
    }
    Ok(vac)
}

/// `H^r` applied to a vector: site constants minus local operators.
/// The constant at face `l` is fixed by the vanishing of the ground
/// component, i.e. it is the ground overlap of the local operator on
/// the current estimate (whose ground coefficient is pinned to one).
fn hamiltonian_apply(
    coeffs: &CtmCoefficients,
    boundary: &PathBoundary,
    vac: &PathVector,
    window: usize,
    order: i64,
) -> Result<PathVector> {
    let ground = boundary.ground_path(window);
    let mut out = PathVector::new();
    for l in 1..=window - 1 {
        let scale = crate::num::rat_int(l as i64);
        let local = ctm_local(coeffs, l, vac, order);
        let site_constant = local
            .coeff(&ground)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(order));
        for (p, c) in &vac.terms {
            out.add(p.clone(), c.mul(&site_constant).scale(&scale).truncate(order));
        }
        for (p, c) in local.terms {
            out.add(p, c.scale(&scale).neg().truncate(order));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary() -> PathBoundary {
        PathBoundary {
            xi: WeightIndex::new(2, 0),
            eta: WeightIndex::new(1, 0),
            lambda: WeightIndex::new(3, 0),
        }
    }

    #[test]
    fn flip_and_bend_leading_orders() {
        let mut wctx = WeightCtx::new(3);
        let c = ctm_coefficients(&mut wctx, 9).unwrap();
        // Bend derivatives start at 1 (the derivative of the unit-slope
        // prefactor); flip derivatives start at order q.
        let b = c.bend.get(&(0, true)).unwrap();
        assert_eq!(b.valuation(), 0);
        assert_eq!(b.coeff(0).coeff(0), crate::num::rat(1, 1));
        let f = c.flip.get(&(1, false)).unwrap();
        assert_eq!(f.valuation(), 2);
        assert_eq!(f.coeff(2).coeff(0), crate::num::rat(-2, 1));
        // Flips off the edge of the weight lattice are absent.
        assert!(c.flip.get(&(0, true)).is_none());
        assert!(c.flip.get(&(3, false)).is_none());
    }

    #[test]
    fn local_operator_kills_straight_triples() {
        let mut wctx = WeightCtx::new(3);
        let c = ctm_coefficients(&mut wctx, 9).unwrap();
        let b = boundary();
        let mut pv = PathVector::new();
        // Path 0 1 2 1 0 1 0: triple at l = 1 is (2,1,0): straight.
        let p = FinitePath { entries: vec![0, 1, 2, 1, 0, 1, 0] };
        pv.add(p, QSeries::one(9));
        let out = ctm_local(&c, 1, &pv, 9);
        assert!(out.terms.is_empty());
        let _ = b;
    }

    #[test]
    fn vacuum_small_window() {
        // First order: every interior odd site gets coefficient -q.
        let mut wctx = WeightCtx::new(3);
        let b = boundary();
        let vac = solve_vacuum(&mut wctx, &b, 10, 3).unwrap();
        let mut single = b.ground_path(10);
        single.entries[2] = 2; // site 3
        let c = vac.coeff(&single).expect("single-defect coefficient");
        assert_eq!(c.coeff(2).coeff(0), crate::num::rat(-1, 1));
    }
}
