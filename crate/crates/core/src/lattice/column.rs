//! The half-infinite column operator on a finite window: a sum over
//! output paths of products of fusion face weights down the column.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::face::{FaceConfig, WeightCtx};
use crate::num::rat;
use crate::series::{Monomial, QSeries};
use crate::weight::WeightIndex;
use crate::zeta::ZetaPoly;

use super::path::{enumerate_paths, FinitePath, PathBoundary, PathVector};

/// Apply the `(m, 1)` column of `N` faces to a path vector supported on
/// the window-`N` space with boundary `(xi, eta; lambda)`; the output
/// lives in the space with boundary `(xi', sigma(eta); lambda')`.
#[allow(clippy::too_many_arguments)]
pub fn lattice_z_apply(
    wctx: &mut WeightCtx,
    m_label: i64,
    n_faces: usize,
    input: &PathVector,
    boundary_in: &PathBoundary,
    xi_out: WeightIndex,
    lambda_out: WeightIndex,
    arg: &Monomial,
    order: i64,
    defect_bound: usize,
) -> Result<PathVector> {
    if !(m_label == 1 || m_label == 2) {
        return Err(Error::UnsupportedFusion(format!(
            "column fusion label {m_label}"
        )));
    }
    let k = boundary_in.level();
    let boundary_out = PathBoundary {
        xi: xi_out,
        eta: boundary_in.eta.sigma(),
        lambda: lambda_out,
    };
    let outputs = enumerate_paths(n_faces, &boundary_out, 1, defect_bound);
    let w = |a: i64| WeightIndex::new(k, a);
    // Face-value cache local to this column application.
    let mut face: BTreeMap<(i64, i64, i64, i64), Option<QSeries>> = BTreeMap::new();
    let mut value = |wctx: &mut WeightCtx,
                     quad: (i64, i64, i64, i64)|
     -> Result<Option<QSeries>> {
        if let Some(hit) = face.get(&quad) {
            return Ok(hit.clone());
        }
        let cfg = FaceConfig::new(w(quad.0), w(quad.1), w(quad.2), w(quad.3), m_label, 1);
        let v = match cfg {
            Ok(cfg) => Some(wctx.face_weight_at(&cfg, arg, order)?),
            Err(Error::InadmissibleConfig(_)) => None,
            Err(e) => return Err(e),
        };
        face.insert(quad, v.clone());
        Ok(v)
    };

    let mut out = PathVector::new();
    for (p, c) in &input.terms {
        assert_eq!(p.window(), n_faces, "input path window mismatch");
        'outer: for p_out in &outputs {
            let mut acc = c.truncate(order);
            for l in 1..=n_faces {
                let quad = (p_out.at(l + 1), p.at(l + 1), p_out.at(l), p.at(l));
                let Some(v) = value(wctx, quad)? else {
                    continue 'outer;
                };
                acc = acc.mul(&v).truncate(order);
                if acc.is_zero() {
                    continue 'outer;
                }
            }
            out.add(p_out.clone(), acc);
        }
    }
    Ok(out)
}

/// Reference normaliser series for the column at each parity, known
/// through order `q^3` (exclusive `u`-truncation 8).
pub fn f_norm_reference(m_label: i64, n_faces: usize) -> Result<QSeries> {
    let trunc = 8;
    let even = n_faces % 2 == 0;
    let mut f = QSeries::one(trunc);
    match (m_label, even) {
        (1, true) => {
            // 1 + (-1 + z^-2) q^2
            f.add_term(4, ZetaPoly::from_terms([(0, rat(-1, 1)), (-2, rat(1, 1))]));
        }
        (1, false) => {}
        (2, true) => {
            // 1 + q^3 / z^2
            f.add_term(6, ZetaPoly::monomial(rat(1, 1), -2));
        }
        (2, false) => {
            // 1 + q^2 / 2
            f.add_term(4, ZetaPoly::constant(rat(1, 2)));
        }
        _ => {
            return Err(Error::UnsupportedFusion(format!(
                "no reference normaliser for label {m_label}"
            )))
        }
    }
    Ok(f)
}

/// Restriction of a wider-window vector to `n_faces` faces: keeps the
/// coefficients of paths that are ground beyond the retained window.
pub fn restrict_to_window(
    input: &PathVector,
    boundary: &PathBoundary,
    n_faces: usize,
) -> PathVector {
    let mut out = PathVector::new();
    for (p, c) in &input.terms {
        if p.window() < n_faces {
            continue;
        }
        // Drop paths that deviate anywhere past the retained window.
        let mut tail_ground = true;
        for l in n_faces + 1..=p.window() + 1 {
            if p.at(l) != boundary.ground(l) {
                tail_ground = false;
                break;
            }
        }
        if !tail_ground {
            continue;
        }
        let restricted = FinitePath { entries: p.entries[..n_faces + 1].to_vec() };
        out.add(restricted, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ctm::solve_vacuum;

    fn boundary() -> PathBoundary {
        PathBoundary {
            xi: WeightIndex::new(2, 0),
            eta: WeightIndex::new(1, 0),
            lambda: WeightIndex::new(3, 0),
        }
    }

    #[test]
    fn restriction_keeps_ground_tails() {
        let b = boundary();
        let mut pv = PathVector::new();
        pv.add(b.ground_path(10), QSeries::one(9));
        let mut defect = b.ground_path(10);
        defect.entries[8] = 2; // site 9 defect, beyond a window of 6
        pv.add(defect, QSeries::one(9));
        let r = restrict_to_window(&pv, &b, 6);
        assert_eq!(r.terms.len(), 1);
        assert!(r.coeff(&b.ground_path(6)).is_some());
    }

    #[test]
    fn ground_column_leading_value() {
        // At unit-fusion the ground-to-ground column is 1 + O(q) after
        // normalising by nothing: its leading series coefficient is 1.
        let mut wctx = WeightCtx::new(3);
        let b = boundary();
        let vac = solve_vacuum(&mut wctx, &b, 12, 1).unwrap();
        let restricted = restrict_to_window(&vac, &b, 6);
        let out = lattice_z_apply(
            &mut wctx,
            1,
            6,
            &restricted,
            &b,
            WeightIndex::new(2, 0),
            WeightIndex::new(3, 1),
            &Monomial::zeta(),
            5,
            1,
        )
        .unwrap();
        let out_boundary = PathBoundary {
            xi: WeightIndex::new(2, 0),
            eta: WeightIndex::new(1, 1),
            lambda: WeightIndex::new(3, 1),
        };
        let g = out_boundary.ground_path(6);
        let lead = out.coeff(&g).expect("ground output");
        assert_eq!(lead.coeff(0), ZetaPoly::constant(rat(1, 1)));
    }
}
