//! Highest-weight (singular) vectors in a tensor product of two
//! modules: the kernel of both raising operators at a fixed classical
//! weight, graded by principal degree.

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::ratfunc::{q_integer, RatFunc};

use super::free::Generator;
use super::module::{BasisId, HwModule};
use super::tensor::TensorElem;

#[derive(Clone, Debug)]
pub struct OmegaVector {
    pub degree: usize,
    pub elem: TensorElem,
}

#[derive(Clone, Debug)]
pub struct OmegaBasis {
    pub target: (i64, i64),
    pub vectors: Vec<OmegaVector>,
}

impl OmegaBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vectors.iter().map(|v| v.degree).collect()
    }
}

/// Weight-matched slots at total principal degree `d`, ordered so that
/// first-leg-trivial slots come first (the normalisation anchors).
fn slots_at(m1: &HwModule, m2: &HwModule, target: (i64, i64), d: usize) -> Vec<(BasisId, BasisId)> {
    let mut out = vec![];
    for d1 in 0..=d {
        let d2 = d - d1;
        if d1 > m1.max_degree || d2 > m2.max_degree {
            continue;
        }
        for i1 in 0..m1.dim(d1) {
            for i2 in 0..m2.dim(d2) {
                let w1 = m1.weight_of((d1, i1));
                let w2 = m2.weight_of((d2, i2));
                if (w1.0 + w2.0, w1.1 + w2.1) == target {
                    out.push(((d1, i1), (d2, i2)));
                }
            }
        }
    }
    out
}

/// All singular vectors at one principal degree, echelon-normalised on
/// the slot order and scaled by the leading-term convention: the
/// anchor coefficient is 1 when the leading second-leg word is short,
/// `1/[2]` once it has length two or more.
pub fn singular_vectors_at(
    m1: &HwModule,
    m2: &HwModule,
    target: (i64, i64),
    d: usize,
) -> Result<Vec<TensorElem>> {
    let slots = slots_at(m1, m2, target, d);
    if slots.is_empty() {
        return Ok(vec![]);
    }
    let mut rows: Vec<Vec<(usize, RatFunc)>> = vec![];
    for i in 0..2u8 {
        // Collect the image slots of D(e_i) on each unknown.
        let mut eq: std::collections::BTreeMap<(BasisId, BasisId), Vec<(usize, RatFunc)>> =
            std::collections::BTreeMap::new();
        for (col, (a, b)) in slots.iter().enumerate() {
            let img = TensorElem::singleton(*a, *b).apply(Generator::E(i), m1, m2)?;
            for ((a2, b2), c) in img.terms {
                eq.entry((a2, b2)).or_default().push((col, c));
            }
        }
        rows.extend(eq.into_values());
    }
    let kernel = nullspace(&rows, slots.len());
    // Echelon-reduce on slot order so leading slots are distinct.
    let mut vecs = kernel;
    vecs.sort_by_key(|v| v.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX));
    for i in 0..vecs.len() {
        let Some(lead) = vecs[i].iter().position(|c| !c.is_zero()) else {
            continue;
        };
        let pivot = vecs[i][lead].clone();
        for j in 0..vecs.len() {
            if i == j || vecs[j][lead].is_zero() {
                continue;
            }
            let factor = vecs[j][lead].div(&pivot);
            for c in 0..slots.len() {
                let sub = factor.mul(&vecs[i][c]);
                vecs[j][c] = vecs[j][c].sub(&sub);
            }
        }
    }
    vecs.retain(|v| v.iter().any(|c| !c.is_zero()));
    vecs.sort_by_key(|v| v.iter().position(|c| !c.is_zero()).unwrap());
    let mut out = vec![];
    for v in vecs {
        let lead = v.iter().position(|c| !c.is_zero()).unwrap();
        let (_, (d2, _)) = slots[lead];
        let anchor = if d2 >= 2 {
            RatFunc::one().div(&q_integer(2))
        } else {
            RatFunc::one()
        };
        let scale = anchor.div(&v[lead]);
        let mut elem = TensorElem::new();
        for (col, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (a, b) = slots[col];
                elem.add(a, b, c.mul(&scale));
            }
        }
        out.push(elem);
    }
    Ok(out)
}

/// Basis of the highest-weight space at classical weight `target` in
/// `M1 (x) M2`, up to the given principal degree, ordered by degree.
pub fn omega_basis(
    m1: &HwModule,
    m2: &HwModule,
    target: (i64, i64),
    max_degree: usize,
) -> Result<OmegaBasis> {
    let mut vectors = vec![];
    for d in 0..=max_degree {
        for elem in singular_vectors_at(m1, m2, target, d)? {
            vectors.push(OmegaVector { degree: d, elem });
        }
    }
    if vectors.is_empty() {
        return Err(Error::EmptySpace(format!("weight {target:?} to degree {max_degree}")));
    }
    Ok(OmegaBasis { target, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::module::HwModule;
    use crate::algebra::tensor::from_free_words;
    use crate::ratfunc::{q_integer, RatFunc};

    fn qi(n: i64) -> RatFunc {
        q_integer(n)
    }

    fn qp(n: i64) -> RatFunc {
        RatFunc::q_pow(n)
    }

    #[test]
    fn vacuum_tensor_has_trivial_top() {
        let m1 = HwModule::build((2, 0), 4);
        let m2 = HwModule::build((1, 0), 4);
        let basis = omega_basis(&m1, &m2, (3, 0), 2).unwrap();
        assert_eq!(basis.vectors[0].degree, 0);
        assert_eq!(
            basis.vectors[0].elem,
            TensorElem::singleton((0, 0), (0, 0))
        );
    }

    #[test]
    fn singular_vectors_are_annihilated_exactly() {
        let m1 = HwModule::build((2, 0), 5);
        let m2 = HwModule::build((1, 0), 5);
        for target in [(3, 0), (1, 2)] {
            let basis = omega_basis(&m1, &m2, target, 4).unwrap();
            for v in &basis.vectors {
                for i in 0..2u8 {
                    let img = v.elem.apply(Generator::E(i), &m1, &m2).unwrap();
                    assert!(img.is_zero(), "e_{i} does not kill degree-{} vector", v.degree);
                }
            }
        }
    }

    #[test]
    fn first_excited_vector_of_vacuum_pair() {
        // Weight (1,2) at degree 1: v (x) f_0 v - (q^2/[2]) f_0 v (x) v.
        let mut m1 = HwModule::build((2, 0), 4);
        let mut m2 = HwModule::build((1, 0), 4);
        let basis = omega_basis(&m1, &m2, (1, 2), 3).unwrap();
        assert_eq!(basis.vectors[0].degree, 1);
        let want = from_free_words(
            &mut m1,
            &mut m2,
            &[
                (vec![], vec![0], RatFunc::one()),
                (vec![0], vec![], qp(2).div(&qi(2)).neg()),
            ],
        )
        .unwrap();
        assert_eq!(basis.vectors[0].elem, want);
    }

    #[test]
    fn empty_space_is_an_error() {
        let m1 = HwModule::build((2, 0), 2);
        let m2 = HwModule::build((1, 0), 2);
        // Weight (3,0) has nothing at odd degrees only; a absurd target
        // with no slots at all errors out.
        assert!(matches!(
            omega_basis(&m1, &m2, (30, 0), 2),
            Err(Error::EmptySpace(_))
        ));
    }
}
