//! Hypergeometric matrix elements of paired vertex operators and their
//! internal consistency checks.
//!
//! Each matrix element is `gamma(z)` times a pair of basic
//! hypergeometric terms whose parameters are integer combinations of 1
//! and `2s`; the second term's parameters are always the first's shifted
//! by `(alpha, gamma) -> (alpha + 1, gamma + 1)`, which is what the two
//! contiguity identities verify.

use num_traits::One;

use crate::error::{Error, Result};
use crate::num::{rat_int, Rational};
use crate::qspecial::{gamma_z, p_pow, phi21, s_of};
use crate::series::{Monomial, QSeries};
use crate::weight::{admissible, WeightIndex};

/// Which corner of the paired-operator matrix element is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiCase {
    /// `mu = lambda_+` in the `(n,1)` element.
    MuUp,
    /// `mu = lambda_-` in the `(n,1)` element.
    MuDown,
    /// `nu = mu_+` in the `(1,n)` element.
    NuUp,
    /// `nu = mu_-` in the `(1,n)` element.
    NuDown,
}

#[derive(Clone, Copy, Debug)]
pub struct MatrixElementSpec {
    pub n: i64,
    pub case: PsiCase,
    /// Index of the source weight `lambda`.
    pub a: i64,
    /// Component index on the spin-`n/2` leg, fixed by the total weight.
    pub j: i64,
}

impl MatrixElementSpec {
    /// Index of the target weight `nu` implied by the weight rule.
    pub fn nu_index(&self) -> i64 {
        match self.case {
            PsiCase::MuUp | PsiCase::NuUp => self.a - self.n + 2 * self.j + 1,
            PsiCase::MuDown | PsiCase::NuDown => self.a - self.n + 2 * self.j - 1,
        }
    }

    pub fn mu_index(&self) -> i64 {
        match self.case {
            PsiCase::MuUp => self.a + 1,
            PsiCase::MuDown => self.a - 1,
            PsiCase::NuUp => self.nu_index() - 1,
            PsiCase::NuDown => self.nu_index() + 1,
        }
    }

    /// Validity at level `k`: all three weights in range, both vertex
    /// operators admissible, and the component index within the module.
    pub fn is_valid(&self, k: i64) -> bool {
        if !(0..=self.n).contains(&self.j) {
            return false;
        }
        let (a, mu, nu) = (self.a, self.mu_index(), self.nu_index());
        if ![a, mu, nu].iter().all(|x| (0..=k).contains(x)) {
            return false;
        }
        let w = |i: i64| WeightIndex::new(k, i);
        match self.case {
            PsiCase::MuUp | PsiCase::MuDown => {
                admissible((w(a), w(mu)), 1).unwrap() && admissible((w(mu), w(nu)), self.n).unwrap()
            }
            PsiCase::NuUp | PsiCase::NuDown => {
                admissible((w(a), w(mu)), self.n).unwrap() && admissible((w(mu), w(nu)), 1).unwrap()
            }
        }
    }

    /// Every valid spec at level `k` for a given `n`.
    pub fn enumerate(k: i64, n: i64) -> Vec<Self> {
        let mut out = vec![];
        for case in [PsiCase::MuUp, PsiCase::MuDown, PsiCase::NuUp, PsiCase::NuDown] {
            for a in 0..=k {
                for j in 0..=n {
                    let spec = Self { n, case, a, j };
                    if spec.is_valid(k) {
                        out.push(spec);
                    }
                }
            }
        }
        out
    }

    /// First-term hypergeometric parameters `(alpha, beta, gamma)`.
    pub fn phi_parameters(&self, k: i64) -> (Rational, Rational, Rational) {
        let s = s_of(k);
        let sx = |m: i64| s.clone() * rat_int(m);
        let one = Rational::one();
        let (a, n, j) = (self.a, self.n, self.j);
        match self.case {
            PsiCase::MuUp => (-sx(2 * (1 + j)), sx(2 * (a + 1 - n + j)), sx(2 * (a + 1))),
            PsiCase::MuDown => (
                sx(2 * (-n + j - 1)),
                one.clone() - sx(2 * (a + j + 1)),
                one.clone() - sx(2 * (a + 1)),
            ),
            PsiCase::NuUp => (
                -sx(2 * (1 + j)),
                one.clone() - sx(2 * (a + j + 2)),
                one.clone() - sx(2 * (a - n + 2 * j + 2)),
            ),
            PsiCase::NuDown => (
                sx(2 * (-n + j - 1)),
                sx(2 * (a - n + j)),
                sx(2 * (a - n + 2 * j)),
            ),
        }
    }

    /// The exact prefactor of the second term as a series; it vanishes
    /// at the boundary of the component range.
    fn second_prefactor(&self, z: &QSeries, k: i64, order: i64) -> Result<QSeries> {
        let (a, n, j) = (self.a, self.n, self.j);
        let deep = order + 160;
        let one = QSeries::one(deep);
        let q2 = |e: i64| QSeries::monomial(Monomial::q_pow(e), deep);
        let p_mono = |x: i64| QSeries::monomial(p_pow(&rat_int(x), k), deep);
        match self.case {
            PsiCase::MuUp => {
                // q^{2(a+1)+n-j} (1 - q^{2(j-n)}) / (1 - q^{2(a+1)})
                let e = 2 * (a + 1) + n - j;
                let num = q2(e).sub(&q2(e + 2 * (j - n)));
                num.div(&one.sub(&q2(2 * (a + 1))))
            }
            PsiCase::MuDown => {
                // z p q^{-2(a+1)+j} (1 - q^{-2j}) / (1 - p q^{-2(a+1)})
                let head = z
                    .mul(&p_mono(1))
                    .mul(&q2(-2 * (a + 1) + j).sub(&q2(-2 * (a + 1) - j)));
                head.div(&one.sub(&p_mono(1).mul(&q2(-2 * (a + 1)))))
            }
            PsiCase::NuUp => {
                // z q^{j-n} (1 - q^{2(n-j)}) / (1 - p^{-1} q^{2(a+2-n+2j)})
                let head = z.mul(&q2(j - n).sub(&q2(n - j)));
                head.div(&one.sub(&p_mono(-1).mul(&q2(2 * (a + 2 - n + 2 * j)))))
            }
            PsiCase::NuDown => {
                // q^{-j} (1 - q^{2j}) / (1 - q^{-2(a-n+2j)})
                let num = q2(-j).sub(&q2(j));
                num.div(&one.sub(&q2(-2 * (a - n + 2 * j))))
            }
        }
    }

    /// Component slot labels for the first and second terms, in the
    /// display order of the element: `(spin-n/2 index, spin-1/2 index)`
    /// for the `(n,1)` cases and the transpose for `(1,n)`.
    pub fn slots(&self) -> ((i64, i64), (i64, i64)) {
        let j = self.j;
        match self.case {
            PsiCase::MuUp => ((j, 1), (j + 1, 0)),
            PsiCase::MuDown => ((j, 0), (j - 1, 1)),
            PsiCase::NuUp => ((1, j), (0, j + 1)),
            PsiCase::NuDown => ((0, j), (1, j - 1)),
        }
    }
}

/// The two components of the matrix element, each multiplied by the
/// normalising factor `gamma(z)`.
#[derive(Clone, Debug)]
pub struct PsiElement {
    pub first: QSeries,
    pub second: QSeries,
    pub first_slot: (i64, i64),
    pub second_slot: (i64, i64),
}

/// The series argument of every hypergeometric factor: `z p q^{1+n}`.
fn big_z(z: &QSeries, n: i64, k: i64) -> QSeries {
    z.mul_monomial(&p_pow(&Rational::one(), k).mul(&Monomial::q_pow(1 + n)))
}

pub fn psi_element(spec: &MatrixElementSpec, z: &QSeries, k: i64, order: i64) -> Result<PsiElement> {
    let (alpha, beta, gamma) = spec.phi_parameters(k);
    let zz = big_z(z, spec.n, k);
    let g = gamma_z(z, spec.n, k, order)?;
    let n_terms = (order / 2 + 4) as usize;
    let first = g.mul(&phi21(&alpha, &beta, &gamma, &zz, k, n_terms, order)?);
    let pref = spec.second_prefactor(z, k, order)?;
    let second = if pref.is_zero() {
        QSeries::zero(order)
    } else {
        let one = Rational::one();
        let phi2 = phi21(&(&alpha + &one), &beta, &(&gamma + &one), &zz, k, n_terms, order)?;
        g.mul(&pref).mul(&phi2).truncate(order)
    };
    let (s1, s2) = spec.slots();
    Ok(PsiElement { first: first.truncate(order), second, first_slot: s1, second_slot: s2 })
}

/// The two contiguity identities tying `phi(alpha, beta; gamma)` at `z`
/// and `pz` to `phi(alpha + 1, beta; gamma + 1)`:
///
/// 1. `(1 - z p^a) phi(pz) - (1 - z) phi(z)
///      = z (p^b - p^g) (1-p^a)/(1-p^g) phi'(pz)`;
/// 2. `(1 - z p^{a+b-g}) phi(pz) - (1 - z p^{b-g}) phi(z)
///      = -z (1 - p^{b-g}) (1-p^a)/(1-p^g) phi'(z)`.
pub fn contiguity_check(
    identity: u8,
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    z: &QSeries,
    k: i64,
    order: i64,
) -> Result<bool> {
    let deep = order + 160;
    let one = QSeries::one(deep);
    let pm = |x: &Rational| QSeries::monomial(p_pow(x, k), deep);
    let n_terms = (order / 2 + 6) as usize;
    let pz = z.mul_monomial(&p_pow(&Rational::one(), k));
    let phi_z = phi21(alpha, beta, gamma, z, k, n_terms, order)?;
    let phi_pz = phi21(alpha, beta, gamma, &pz, k, n_terms, order)?;
    let rone = Rational::one();
    let factor = one
        .sub(&pm(alpha))
        .div(&one.sub(&pm(gamma)))
        .map_err(|_| Error::PolarArgument(format!("gamma = {gamma}")))?;
    let diff = match identity {
        1 => {
            let shifted_pz = phi21(&(alpha + &rone), beta, &(gamma + &rone), &pz, k, n_terms, order)?;
            let lhs = one
                .sub(&z.mul(&pm(alpha)))
                .mul(&phi_pz)
                .sub(&one.sub(z).mul(&phi_z));
            let rhs = z.mul(&pm(beta).sub(&pm(gamma))).mul(&factor).mul(&shifted_pz);
            lhs.sub(&rhs)
        }
        2 => {
            let shifted_z = phi21(&(alpha + &rone), beta, &(gamma + &rone), z, k, n_terms, order)?;
            let abg = &(alpha + beta) - gamma;
            let bg = beta - gamma;
            let lhs = one
                .sub(&z.mul(&pm(&abg)))
                .mul(&phi_pz)
                .sub(&one.sub(&z.mul(&pm(&bg))).mul(&phi_z));
            let rhs = z.mul(&one.sub(&pm(&bg))).mul(&factor).mul(&shifted_z).neg();
            lhs.sub(&rhs)
        }
        _ => panic!("identity must be 1 or 2"),
    };
    Ok(diff.truncate(order.min(diff.truncation_order())).is_zero())
}

/// Verify that the shifted hypergeometric series entering the second
/// component is exactly the one the contiguity identities reconstruct
/// from the first component under `z -> pz`: identity 2 yields it at
/// argument `Z`, identity 1 at argument `pZ`.
pub fn qkz_shift_check(spec: &MatrixElementSpec, z: &QSeries, k: i64, order: i64) -> Result<bool> {
    let (alpha, beta, gamma) = spec.phi_parameters(k);
    let zz = big_z(z, spec.n, k);
    let n_terms = (order / 2 + 6) as usize;
    let deep = order + 160;
    let one = QSeries::one(deep);
    let pm = |x: &Rational| QSeries::monomial(p_pow(x, k), deep);
    let rone = Rational::one();
    let pzz = zz.mul_monomial(&p_pow(&rone, k));
    let phi_z = phi21(&alpha, &beta, &gamma, &zz, k, n_terms, order)?;
    let phi_pz = phi21(&alpha, &beta, &gamma, &pzz, k, n_terms, order)?;

    if beta == gamma {
        // Both identities degenerate to (1 - Z p^a) phi(pZ) = (1 - Z) phi(Z).
        let lhs = one.sub(&zz.mul(&pm(&alpha))).mul(&phi_pz);
        let rhs = one.sub(&zz).mul(&phi_z);
        let ord = order.min(lhs.truncation_order()).min(rhs.truncation_order());
        return Ok(lhs.eq_to_order(&rhs, ord));
    }

    // Identity 2, solved for the shifted series at argument Z.
    let bg = &beta - &gamma;
    let abg = &(&alpha + &beta) - &gamma;
    let numerator = one
        .sub(&zz.mul(&pm(&abg)))
        .mul(&phi_pz)
        .sub(&one.sub(&zz.mul(&pm(&bg))).mul(&phi_z));
    let denom = zz
        .mul(&one.sub(&pm(&bg)))
        .mul(&one.sub(&pm(&alpha)))
        .div(&one.sub(&pm(&gamma)))?
        .neg();
    let reconstructed = numerator.div(&denom)?;
    let direct = phi21(&(&alpha + &rone), &beta, &(&gamma + &rone), &zz, k, n_terms, order)?;
    let ord = order.min(reconstructed.truncation_order()).min(direct.truncation_order());
    if !reconstructed.eq_to_order(&direct, ord) {
        return Ok(false);
    }

    // Identity 1, solved for the shifted series at argument pZ.
    let numerator = one
        .sub(&zz.mul(&pm(&alpha)))
        .mul(&phi_pz)
        .sub(&one.sub(&zz).mul(&phi_z));
    let denom = zz
        .mul(&pm(&beta).sub(&pm(&gamma)))
        .mul(&one.sub(&pm(&alpha)))
        .div(&one.sub(&pm(&gamma)))?;
    if denom.is_zero() {
        return Ok(true);
    }
    let reconstructed = numerator.div(&denom)?;
    let direct = phi21(&(&alpha + &rone), &beta, &(&gamma + &rone), &pzz, k, n_terms, order)?;
    let ord = order.min(reconstructed.truncation_order()).min(direct.truncation_order());
    Ok(reconstructed.eq_to_order(&direct, ord))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    const K: i64 = 3;

    fn zq() -> QSeries {
        QSeries::monomial(Monomial::new(rat(1, 1), 2, 1), 400)
    }

    #[test]
    fn normalisation_at_zero_argument() {
        for n in [1, 2] {
            for spec in MatrixElementSpec::enumerate(K, n) {
                let psi = psi_element(&spec, &QSeries::zero(17), K, 17).unwrap();
                assert!(
                    psi.first.eq_to_order(&QSeries::one(17), 17),
                    "first component at z=0 not 1 for {spec:?}"
                );
            }
        }
    }

    #[test]
    fn boundary_components_vanish() {
        let spec = MatrixElementSpec { n: 1, case: PsiCase::MuUp, a: 1, j: 1 };
        assert!(spec.is_valid(K));
        let psi = psi_element(&spec, &zq(), K, 13).unwrap();
        assert!(psi.second.is_zero());
    }

    #[test]
    fn contiguity_identities_sample() {
        let spec = MatrixElementSpec { n: 1, case: PsiCase::MuUp, a: 0, j: 1 };
        let (a, b, g) = spec.phi_parameters(K);
        assert!(contiguity_check(1, &a, &b, &g, &zq(), K, 15).unwrap());
        assert!(contiguity_check(2, &a, &b, &g, &zq(), K, 15).unwrap());
        // And one from each fusion family, taken from the enumeration.
        for n in [1, 2] {
            let spec = *MatrixElementSpec::enumerate(K, n).last().unwrap();
            let (a, b, g) = spec.phi_parameters(K);
            assert!(contiguity_check(1, &a, &b, &g, &zq(), K, 15).unwrap(), "{spec:?}");
            assert!(contiguity_check(2, &a, &b, &g, &zq(), K, 15).unwrap(), "{spec:?}");
        }
    }

    #[test]
    fn shift_check_sample() {
        let spec = MatrixElementSpec { n: 1, case: PsiCase::MuUp, a: 0, j: 1 };
        assert!(qkz_shift_check(&spec, &zq(), K, 17).unwrap());
        let spec = MatrixElementSpec { n: 2, case: PsiCase::MuDown, a: 2, j: 1 };
        assert!(spec.is_valid(K));
        assert!(qkz_shift_check(&spec, &zq(), K, 17).unwrap());
    }

    #[test]
    fn enumeration_is_self_consistent() {
        for n in [1, 2] {
            let specs = MatrixElementSpec::enumerate(K, n);
            assert!(!specs.is_empty());
            for s in specs {
                assert!(s.is_valid(K));
            }
        }
    }
}
