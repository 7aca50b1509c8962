//! Exact linear algebra over the field of rational functions of `q`.

use crate::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The unique solution vector.
    Unique(Vec<RatFunc>),
    /// Solvable but the kernel is nontrivial.
    Underdetermined,
    /// No solution exists.
    Inconsistent,
}

/// Solve `A x = b` by fraction-free-ish Gaussian elimination with exact
/// rational-function arithmetic. `rows` holds sparse rows as
/// `(Vec<(col, coeff)>, rhs)`.
pub fn solve(rows: &[(Vec<(usize, RatFunc)>, RatFunc)], n_unknowns: usize) -> SolveOutcome {
    let mut m: Vec<Vec<RatFunc>> = Vec::with_capacity(rows.len());
    for (cols, rhs) in rows {
        let mut row = vec![RatFunc::zero(); n_unknowns + 1];
        for (c, v) in cols {
            row[*c] = row[*c].add(v);
        }
        row[n_unknowns] = rhs.clone();
        m.push(row);
    }
    let rank = eliminate(&mut m, n_unknowns);
    // Inconsistency: a zero row with nonzero rhs.
    for row in &m {
        if row[..n_unknowns].iter().all(|v| v.is_zero()) && !row[n_unknowns].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if rank < n_unknowns {
        return SolveOutcome::Underdetermined;
    }
    // Back substitution on the echelon form.
    let mut x = vec![RatFunc::zero(); n_unknowns];
    for row in m.iter().rev() {
        let Some(p) = row[..n_unknowns].iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let mut acc = row[n_unknowns].clone();
        for c in p + 1..n_unknowns {
            if !row[c].is_zero() {
                acc = acc.sub(&row[c].mul(&x[c]));
            }
        }
        x[p] = acc.div(&row[p]);
    }
    SolveOutcome::Unique(x)
}

/// Row-reduce in place, returning the rank. Columns `0..n` participate;
/// anything beyond rides along (right-hand sides).
fn eliminate(m: &mut [Vec<RatFunc>], n: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].div(&m[rank][col]);
            for c in col..m[r].len() {
                let sub = factor.mul(&m[rank][c]);
                m[r][c] = m[r][c].sub(&sub);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Basis of the nullspace of the homogeneous system `A x = 0`.
pub fn nullspace(rows: &[Vec<(usize, RatFunc)>], n_unknowns: usize) -> Vec<Vec<RatFunc>> {
    let mut m: Vec<Vec<RatFunc>> = Vec::with_capacity(rows.len());
    for cols in rows {
        let mut row = vec![RatFunc::zero(); n_unknowns];
        for (c, v) in cols {
            row[*c] = row[*c].add(v);
        }
        m.push(row);
    }
    eliminate(&mut m, n_unknowns);
    // Identify pivot columns.
    let mut pivots = vec![None; n_unknowns];
    let mut pivot_rows = vec![];
    for row in &m {
        if let Some(p) = row.iter().position(|v| !v.is_zero()) {
            pivots[p] = Some(pivot_rows.len());
            pivot_rows.push(row.clone());
        }
    }
    let mut basis = vec![];
    for free in 0..n_unknowns {
        if pivots[free].is_some() {
            continue;
        }
        let mut x = vec![RatFunc::zero(); n_unknowns];
        x[free] = RatFunc::one();
        // Solve the pivot variables bottom up.
        for row in pivot_rows.iter().rev() {
            let p = row.iter().position(|v| !v.is_zero()).unwrap();
            let mut acc = RatFunc::zero();
            for c in p + 1..n_unknowns {
                if !row[c].is_zero() && !x[c].is_zero() {
                    acc = acc.add(&row[c].mul(&x[c]));
                }
            }
            x[p] = acc.neg().div(&row[p]);
        }
        basis.push(x);
    }
    basis
}

/// Exact rank of a dense matrix given as sparse rows.
pub fn rank(rows: &[Vec<(usize, RatFunc)>], n_cols: usize) -> usize {
    let mut m: Vec<Vec<RatFunc>> = Vec::with_capacity(rows.len());
    for cols in rows {
        let mut row = vec![RatFunc::zero(); n_cols];
        for (c, v) in cols {
            row[*c] = row[*c].add(v);
        }
        m.push(row);
    }
    eliminate(&mut m, n_cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::q_integer;

    #[test]
    fn solve_two_by_two() {
        // x + [2] y = [2]; x - y = 0  =>  x = y = [2]/(1+[2])
        let rows = vec![
            (vec![(0, RatFunc::one()), (1, q_integer(2))], q_integer(2)),
            (vec![(0, RatFunc::one()), (1, RatFunc::one().neg())], RatFunc::zero()),
        ];
        let SolveOutcome::Unique(x) = solve(&rows, 2) else {
            panic!("expected unique solution");
        };
        let want = q_integer(2).div(&RatFunc::one().add(&q_integer(2)));
        assert_eq!(x[0], want);
        assert_eq!(x[1], want);
    }

    #[test]
    fn detect_inconsistency() {
        let rows = vec![
            (vec![(0, RatFunc::one())], RatFunc::one()),
            (vec![(0, RatFunc::one())], q_integer(2)),
        ];
        assert_eq!(solve(&rows, 1), SolveOutcome::Inconsistent);
    }

    #[test]
    fn nullspace_of_rank_one() {
        // x + y = 0 has kernel spanned by (1, -1) up to scaling.
        let rows = vec![vec![(0, RatFunc::one()), (1, RatFunc::one())]];
        let basis = nullspace(&rows, 2);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert_eq!(v[0].add(&v[1]), RatFunc::zero());
    }
}
