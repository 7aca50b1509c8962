//! Finite restricted paths, ground states and defect bookkeeping.

use std::collections::BTreeMap;

use crate::series::QSeries;
use crate::weight::{admissible, WeightIndex};

/// A finite path `p(1), ..., p(N+1)` of weight indices on a window of
/// `N` faces; consecutive entries are `n`-admissible and the top entry
/// is pinned to the ground value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinitePath {
    pub entries: Vec<i64>,
}

impl FinitePath {
    /// `p(l)` with the 1-based convention.
    pub fn at(&self, l: usize) -> i64 {
        self.entries[l - 1]
    }

    pub fn window(&self) -> usize {
        self.entries.len() - 1
    }
}

/// Boundary data of a path space: `xi` one level down, `eta` at level
/// `n`, and the starting weight `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PathBoundary {
    pub xi: WeightIndex,
    pub eta: WeightIndex,
    pub lambda: WeightIndex,
}

impl PathBoundary {
    pub fn level(&self) -> i64 {
        self.xi.level + self.eta.level
    }

    /// Ground value at 1-based site `l`: the index of `xi + sigma^{l-1}(eta)`.
    pub fn ground(&self, l: usize) -> i64 {
        let eta = if (l - 1) % 2 == 0 { self.eta } else { self.eta.sigma() };
        self.xi.a + eta.a
    }

    pub fn ground_path(&self, window: usize) -> FinitePath {
        FinitePath { entries: (1..=window + 1).map(|l| self.ground(l)).collect() }
    }

    /// Defect sites of a path: interior positions where it leaves the
    /// ground profile (the pinned start and top entries never count).
    pub fn defects(&self, p: &FinitePath) -> Vec<(usize, i64)> {
        (2..=p.window())
            .filter(|&l| p.at(l) != self.ground(l))
            .map(|l| (l, p.at(l)))
            .collect()
    }
}

/// All admissible paths on the window with at most `defect_bound`
/// deviations from the ground profile.
pub fn enumerate_paths(
    window: usize,
    boundary: &PathBoundary,
    n: i64,
    defect_bound: usize,
) -> Vec<FinitePath> {
    let k = boundary.level();
    let top = boundary.ground(window + 1);
    let start = boundary.lambda.a;
    let mut out = vec![];
    let mut stack: Vec<(Vec<i64>, usize)> = vec![(vec![start], 0)];
    while let Some((prefix, defects)) = stack.pop() {
        let l = prefix.len();
        if l == window + 1 {
            if *prefix.last().unwrap() == top {
                out.push(FinitePath { entries: prefix });
            }
            continue;
        }
        let cur = *prefix.last().unwrap();
        for next in 0..=k {
            if !admissible((WeightIndex::new(k, cur), WeightIndex::new(k, next)), n).unwrap() {
                continue;
            }
            let site = l + 1;
            let is_defect = site <= window && next != boundary.ground(site);
            let d = defects + usize::from(is_defect);
            if d > defect_bound {
                continue;
            }
            // Remaining sites must be able to come back to the ground
            // profile: each step moves the index by at most n.
            let remaining = (window + 1 - site) as i64;
            if (next - top).abs() > remaining * n {
                continue;
            }
            let mut p = prefix.clone();
            p.push(next);
            stack.push((p, d));
        }
    }
    out.sort();
    out
}

/// Formal combination of finite paths with series coefficients.
#[derive(Clone, Debug, Default)]
pub struct PathVector {
    pub terms: BTreeMap<FinitePath, QSeries>,
}

impl PathVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, p: FinitePath, c: QSeries) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
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

    pub fn coeff(&self, p: &FinitePath) -> Option<&QSeries> {
        self.terms.get(p)
    }
}

/// Translation-invariant description of a defect configuration: gaps
/// between consecutive defect sites (capped, so that all well-separated
/// spacings fall in one class), their values relative to the ground
/// profile, and the parity of the first site.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassSig {
    pub gaps: Vec<usize>,
    pub values: Vec<i64>,
    pub first_parity: u8,
}

pub const GAP_CAP: usize = 4;

pub fn class_signature(defects: &[(usize, i64)]) -> ClassSig {
    let gaps = defects
        .windows(2)
        .map(|w| (w[1].0 - w[0].0).min(GAP_CAP))
        .collect();
    ClassSig {
        gaps,
        values: defects.iter().map(|d| d.1).collect(),
        first_parity: defects.first().map(|d| (d.0 % 2) as u8).unwrap_or(0),
    }
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
    fn ground_profile_alternates() {
        let b = boundary();
        let g = b.ground_path(6);
        assert_eq!(g.entries, vec![0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn zero_defect_bound_gives_ground_only() {
        let b = boundary();
        let paths = enumerate_paths(8, &b, 1, 0);
        assert_eq!(paths, vec![b.ground_path(8)]);
    }

    #[test]
    fn single_defect_paths_on_window_eight() {
        // One deviation: sites 3, 5, 7 can hold the value 2.
        let b = boundary();
        let paths = enumerate_paths(8, &b, 1, 1);
        let mut singles: Vec<Vec<(usize, i64)>> =
            paths.iter().map(|p| b.defects(p)).filter(|d| d.len() == 1).collect();
        singles.sort();
        assert_eq!(singles, vec![vec![(3, 2)], vec![(5, 2)], vec![(7, 2)]]);
    }

    #[test]
    fn inadmissible_start_gives_nothing() {
        let mut b = boundary();
        b.lambda = WeightIndex::new(3, 3);
        // Starting at 3 with ground top cannot stay within one defect.
        let paths = enumerate_paths(4, &b, 1, 0);
        assert!(paths.is_empty());
    }

    #[test]
    fn signatures_collapse_wide_gaps() {
        let a = class_signature(&[(3, 2), (9, 2)]);
        let b = class_signature(&[(5, 2), (13, 2)]);
        assert_eq!(a, b);
        let c = class_signature(&[(3, 2), (5, 2)]);
        assert_ne!(a, c);
    }
}
