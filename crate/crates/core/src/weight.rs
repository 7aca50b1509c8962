//! Level-`k` dominant integral weights and the admissibility condition
//! that governs which pairs may sit on adjacent lattice sites.

use crate::error::{Error, Result};

/// The weight `a L1 + (k - a) L0` at level `k`, stored by its `L1`
/// coefficient `a` with `0 <= a <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightIndex {
    pub level: i64,
    pub a: i64,
}

impl WeightIndex {
    pub fn new(level: i64, a: i64) -> Self {
        assert!(level >= 0 && 0 <= a && a <= level, "weight index out of range");
        Self { level, a }
    }

    /// All weights of a level.
    pub fn all(level: i64) -> Vec<Self> {
        (0..=level).map(|a| Self::new(level, a)).collect()
    }

    /// The Dynkin-diagram flip `a -> k - a`.
    pub fn sigma(self) -> Self {
        Self::new(self.level, self.level - self.a)
    }

    /// Pairing with the fundamental coweights: `(<h0, .>, <h1, .>)`.
    pub fn pairing(self) -> (i64, i64) {
        (self.level - self.a, self.a)
    }

    /// Sum of weights (levels add).
    pub fn plus(self, other: Self) -> Self {
        Self::new(self.level + other.level, self.a + other.a)
    }
}

/// `N`-admissibility for a pair of same-level weights: the difference
/// walks in steps of 2 within `[-N, N]` and the sum stays in the band
/// `[N, 2k - N]`.
pub fn admissible(pair: (WeightIndex, WeightIndex), n: i64) -> Result<bool> {
    let (x, y) = pair;
    if x.level != y.level {
        return Err(Error::LevelMismatch);
    }
    let k = x.level;
    assert!((0..=k).contains(&n), "fusion label out of range");
    let d = x.a - y.a;
    let s = x.a + y.a;
    let diff_ok = d.abs() <= n && (n - d) % 2 == 0;
    let sum_ok = n <= s && s <= 2 * k - n;
    Ok(diff_ok && sum_ok)
}

/// All `N`-admissible pairs at a level.
pub fn admissible_pairs(level: i64, n: i64) -> Vec<(WeightIndex, WeightIndex)> {
    let mut out = vec![];
    for x in WeightIndex::all(level) {
        for y in WeightIndex::all(level) {
            if admissible((x, y), n).unwrap() {
                out.push((x, y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: i64, a: i64) -> WeightIndex {
        WeightIndex::new(k, a)
    }

    #[test]
    fn zero_label_forces_equality() {
        assert!(admissible((w(3, 0), w(3, 0)), 0).unwrap());
        assert!(!admissible((w(3, 0), w(3, 1)), 0).unwrap());
    }

    #[test]
    fn label_one_is_nearest_neighbour() {
        // For N = 1 the sum condition follows from the difference one.
        assert!(admissible((w(3, 0), w(3, 1)), 1).unwrap());
        for x in WeightIndex::all(3) {
            for y in WeightIndex::all(3) {
                let adm = admissible((x, y), 1).unwrap();
                assert_eq!(adm, (x.a - y.a).abs() == 1);
            }
        }
    }

    #[test]
    fn sum_condition_bites_at_label_two() {
        // The sum must stay in [N, 2k - N]: (0, 0) fails at N = 2, while
        // (0, 2) sits exactly on the lower edge.
        assert!(!admissible((w(3, 0), w(3, 0)), 2).unwrap());
        assert!(!admissible((w(3, 3), w(3, 3)), 2).unwrap());
        assert!(admissible((w(3, 0), w(3, 2)), 2).unwrap());
        let pairs = admissible_pairs(3, 2);
        let expect: Vec<(i64, i64)> = vec![(0, 2), (1, 1), (1, 3), (2, 0), (2, 2), (3, 1)];
        let got: Vec<(i64, i64)> = pairs.iter().map(|(x, y)| (x.a, y.a)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn top_label_forces_complementary_sum() {
        let pairs = admissible_pairs(3, 3);
        let got: Vec<(i64, i64)> = pairs.iter().map(|(x, y)| (x.a, y.a)).collect();
        assert_eq!(got, vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
    }

    #[test]
    fn level_mismatch_is_an_error() {
        assert_eq!(admissible((w(3, 0), w(2, 0)), 1), Err(Error::LevelMismatch));
    }

    #[test]
    fn admissibility_is_symmetric() {
        for k in 1..=4 {
            for n in 0..=k {
                for x in WeightIndex::all(k) {
                    for y in WeightIndex::all(k) {
                        assert_eq!(
                            admissible((x, y), n).unwrap(),
                            admissible((y, x), n).unwrap()
                        );
                    }
                }
            }
        }
    }
}
