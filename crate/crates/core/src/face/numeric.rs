//! Floating-point scan of the `(n,1)` weights in the ordered regime
//! `0 < -q < 1/z < 1`, ranking their magnitudes against the expected
//! maximal configurations.

use crate::error::{Error, Result};
use crate::series::{complex_abs, Monomial};
use crate::weight::admissible_pairs;

use super::{enumerate_faces, WeightCtx};

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub quad: (i64, i64, i64, i64),
    pub magnitude: f64,
    pub error_bound: f64,
    pub is_expected_max: bool,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    /// True when the top-magnitude group is exactly the expected set and
    /// is separated from the rest by more than the error bounds.
    pub maxima_match: bool,
}

/// The configurations expected to dominate in the ordered regime:
/// `(xi' + L_i, xi + L_{1-i}, xi' + L_{1-i}, xi + L_i)` with
/// `(xi, xi')` an `(n-1)`-admissible pair one level down.
pub fn expected_maxima(k: i64, n: i64) -> Vec<(i64, i64, i64, i64)> {
    let mut out = vec![];
    for (xi, xip) in admissible_pairs(k - 1, n - 1) {
        for i in [0i64, 1] {
            let lam = xip.a + i;
            let mu = xi.a + (1 - i);
            let mup = xip.a + (1 - i);
            let nu = xi.a + i;
            out.push((lam, mu, mup, nu));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Evaluate all `(n,1)` weights at numeric `(q, z)` with `q < 0`. The
/// series are evaluated at the complex half-power `u = i sqrt(-q)`; a
/// crude geometric tail estimate supplies the error bound.
pub fn numeric_max_scan(n: i64, k: i64, q: f64, z: f64, precision: i64) -> Result<ScanReport> {
    if !(q < 0.0 && 0.0 < -q && -q < 1.0 / z && 1.0 / z < 1.0) {
        return Err(Error::RegimeViolation(format!(
            "need 0 < -q < 1/z < 1, got q = {q}, z = {z}"
        )));
    }
    let order = precision.max(24);
    let mut ctx = WeightCtx::new(k);
    let u = (0.0, (-q).sqrt());
    let u_abs = (-q).sqrt();
    let expected = expected_maxima(k, n);
    let mut entries = vec![];
    for cfg in enumerate_faces(k, n, 1) {
        let series = ctx.face_weight_at(&cfg, &Monomial::zeta(), order)?;
        let value = series.eval_complex(u, z);
        // Tail bound: top stored coefficients continued geometrically.
        let m = series.tail_magnitude(z, 6).max(1.0);
        let r = u_abs;
        let bound = m * r.powi(order as i32) / (1.0 - r);
        let quad = (cfg.lambda.a, cfg.mu.a, cfg.mu_prime.a, cfg.nu.a);
        entries.push(ScanEntry {
            quad,
            magnitude: complex_abs(value),
            error_bound: bound,
            is_expected_max: expected.contains(&quad),
        });
    }
    entries.sort_by(|a, b| b.magnitude.partial_cmp(&a.magnitude).unwrap());
    let n_expected = expected.len();
    let top_match = entries.iter().take(n_expected).all(|e| e.is_expected_max)
        && entries.iter().skip(n_expected).all(|e| !e.is_expected_max);
    // Separation: smallest expected magnitude must clear the largest
    // non-expected one by more than both bounds.
    let sep_ok = match (
        entries.iter().filter(|e| e.is_expected_max).map(|e| e.magnitude).fold(f64::INFINITY, f64::min),
        entries.iter().filter(|e| !e.is_expected_max).map(|e| (e.magnitude, e.error_bound)).fold(
            (0.0f64, 0.0f64),
            |acc, v| if v.0 > acc.0 { v } else { acc },
        ),
    ) {
        (lo, (hi, hi_bound)) => {
            let lo_bound = entries
                .iter()
                .filter(|e| e.is_expected_max)
                .map(|e| e.error_bound)
                .fold(0.0, f64::max);
            lo - lo_bound > hi + hi_bound
        }
    };
    Ok(ScanReport { entries, maxima_match: top_match && sep_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::WeightIndex;

    #[test]
    fn regime_violation_detected() {
        assert!(matches!(
            numeric_max_scan(1, 3, -0.9, 1.2, 24),
            Err(Error::RegimeViolation(_))
        ));
    }

    #[test]
    fn expected_maxima_level_three() {
        // n = 1: the bend configurations; n = 2: the C-family quads.
        let m1 = expected_maxima(3, 1);
        assert_eq!(m1.len(), 6);
        assert!(m1.contains(&(0, 1, 1, 0)));
        assert!(m1.contains(&(1, 0, 0, 1)));
        let m2 = expected_maxima(3, 2);
        assert_eq!(m2.len(), 8);
        assert!(m2.contains(&(1, 1, 2, 0)));
        assert!(m2.contains(&(2, 0, 1, 1)));
        assert!(m2.contains(&(0, 2, 1, 1)));
        assert!(m2.contains(&(1, 1, 0, 2)));
    }

    #[test]
    fn weight_index_helper() {
        let all = WeightIndex::all(2);
        assert_eq!(all.len(), 3);
    }
}
