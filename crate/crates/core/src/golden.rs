//! Reference coefficient tables for the regression suite: operator
//! actions, vertex-operator expansions, highest-weight vectors, the
//! vacuum series and the normalised column tables, each valid through
//! its own stated depth (order `q^3` unless noted).

use crate::num::{rat, Rational};
use crate::ratfunc::{q_integer, RatFunc};
use crate::series::QSeries;
use crate::zeta::ZetaPoly;

/// A reference series: terms `(u_exponent, zeta_exponent, value)`,
/// exact through the exclusive `u` bound `check_order`.
#[derive(Clone, Debug)]
pub struct RefSeries {
    pub terms: Vec<(i64, i64, Rational)>,
    pub check_order: i64,
}

impl RefSeries {
    pub fn new(terms: Vec<(i64, i64, Rational)>, check_order: i64) -> Self {
        Self { terms, check_order }
    }

    pub fn to_series(&self) -> QSeries {
        let mut s = QSeries::zero(self.check_order);
        for (u, z, c) in &self.terms {
            s.add_term(*u, ZetaPoly::monomial(c.clone(), *z));
        }
        s
    }

    /// Compare against a computed series on the overlap of validity.
    pub fn matches(&self, computed: &QSeries) -> bool {
        let ord = self.check_order.min(computed.truncation_order());
        computed.eq_to_order(&self.to_series(), ord)
    }
}

fn t(u: i64, z: i64, n: i64, d: i64) -> (i64, i64, Rational) {
    (u, z, rat(n, d))
}

/// One reference operator action between singular-vector bases.
pub struct RefAction {
    /// Pairing-determining data of the source space: fixed first factor
    /// index and second-factor index.
    pub xi: (i64, i64),
    pub eta_a: i64,
    pub a_from: i64,
    pub a_to: i64,
    pub src: usize,
    pub tgt: usize,
    pub coeff: RefSeries,
}

/// The listed half-transfer actions with the level-two vacuum as first
/// factor, through order `q^3`.
pub fn x_table() -> Vec<RefAction> {
    table_from(
        (2, 0),
        vec![
            (0, 0, 1, 0, 0, vec![t(0, 0, 1, 1)], 7),
            (0, 0, 1, 0, 1, vec![t(6, 2, 1, 1)], 7),
            (1, 1, 0, 0, 0, vec![t(0, 0, 1, 1)], 7),
            (1, 1, 0, 1, 0, vec![t(2, -2, 1, 1), t(6, -2, -1, 1)], 7),
            (1, 1, 2, 0, 0, vec![t(2, 1, -1, 1)], 7),
            (1, 1, 2, 0, 1, vec![t(8, 3, -1, 1)], 9),
            (1, 1, 2, 1, 0, vec![t(0, -1, 1, 1), t(4, -1, -1, 1)], 7),
            (1, 1, 2, 1, 1, vec![t(2, 1, -1, 1), t(6, 1, 1, 1)], 7),
            (0, 2, 1, 0, 0, vec![t(0, -1, 1, 1)], 7),
            (0, 2, 1, 0, 1, vec![t(2, 1, -1, 1)], 7),
            (0, 2, 1, 1, 0, vec![t(2, -3, 1, 1), t(6, -3, -1, 1)], 7),
            (0, 2, 1, 1, 1, vec![t(0, -1, 1, 1), t(4, -1, -1, 1)], 7),
            (0, 2, 3, 0, 0, vec![t(4, 2, 1, 1)], 7),
            (0, 2, 3, 1, 0, vec![t(2, 0, -1, 1), t(6, 0, 2, 1)], 7),
            (1, 3, 2, 0, 0, vec![t(0, -2, 1, 1)], 7),
            (1, 3, 2, 0, 1, vec![t(2, 0, -1, 1)], 7),
        ],
    )
}

/// The listed actions with the mixed level-two weight as first factor.
pub fn y_table() -> Vec<RefAction> {
    table_from(
        (1, 1),
        vec![
            (1, 0, 1, 0, 0, vec![t(0, -1, 1, 1)], 7),
            (1, 0, 1, 0, 1, vec![t(2, 1, -1, 1)], 7),
            (1, 0, 1, 1, 0, vec![t(2, -3, 1, 1), t(6, -3, -1, 1)], 7),
            (1, 0, 1, 1, 1, vec![t(0, -1, 1, 1), t(4, -1, -1, 1)], 7),
            (0, 1, 0, 0, 0, vec![t(2, 1, -1, 1), t(6, 1, 1, 1)], 7),
            (0, 1, 0, 1, 0, vec![t(0, -1, 1, 1), t(4, -1, -1, 1)], 7),
            (0, 1, 0, 1, 1, vec![t(2, 1, -1, 1), t(6, 1, 1, 1)], 7),
            (0, 1, 2, 0, 0, vec![t(0, 0, 1, 1)], 7),
            (0, 1, 2, 0, 1, vec![t(6, 2, 1, 1)], 7),
            (0, 1, 2, 1, 0, vec![t(2, -2, 1, 1), t(6, -2, -1, 1)], 7),
            (0, 1, 2, 1, 1, vec![t(4, 0, -1, 1)], 7),
            (1, 2, 1, 0, 0, vec![t(0, 0, 1, 1)], 7),
            (1, 2, 1, 0, 1, vec![t(6, 2, 1, 1)], 7),
            (1, 2, 1, 1, 0, vec![t(2, -2, 1, 1), t(6, -2, -1, 1)], 7),
            (1, 2, 1, 1, 1, vec![t(4, 0, -1, 1)], 7),
            (1, 2, 3, 0, 0, vec![t(2, 1, -1, 1), t(6, 1, 1, 1)], 7),
            (1, 2, 3, 1, 0, vec![t(0, -1, 1, 1), t(4, -1, -1, 1)], 7),
            (1, 2, 3, 1, 1, vec![t(2, 1, -1, 1), t(6, 1, 1, 1)], 7),
            (0, 3, 2, 0, 0, vec![t(0, -1, 1, 1)], 7),
            (0, 3, 2, 0, 1, vec![t(2, 1, -1, 1)], 7),
            (0, 3, 2, 1, 0, vec![t(2, -3, 1, 1), t(6, -3, -1, 1)], 7),
            (0, 3, 2, 1, 1, vec![t(0, -1, 1, 1), t(4, -1, -1, 1)], 7),
        ],
    )
}

#[allow(clippy::type_complexity)]
fn table_from(
    xi: (i64, i64),
    rows: Vec<(i64, i64, i64, usize, usize, Vec<(i64, i64, Rational)>, i64)>,
) -> Vec<RefAction> {
    rows.into_iter()
        .map(|(eta_a, a_from, a_to, src, tgt, terms, ord)| RefAction {
            xi,
            eta_a,
            a_from,
            a_to,
            src,
            tgt,
            coeff: RefSeries::new(terms, ord),
        })
        .collect()
}

/// The impurity-block expansion on the source top vector: coefficient 1
/// on the first target vector and the exact bracket ratio with spectral
/// power two on the second.
pub fn z_expansion() -> Vec<(usize, i64, RatFunc)> {
    let c2 = q_integer(2).div(&q_integer(4).mul(&q_integer(3)).sub(&q_integer(2)));
    vec![(0, 0, RatFunc::one()), (1, 2, c2)]
}

/// Reference vertex-operator expansion on the rationalised eval basis.
pub struct RefExpansion {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub n: i64,
    /// `(module word, eval index, coefficient)`; the spectral power is
    /// the word length.
    pub terms: Vec<(Vec<u8>, i64, RatFunc)>,
}

pub fn type1_expansions() -> Vec<RefExpansion> {
    let qi = q_integer;
    let qp = RatFunc::q_pow;
    let one = RatFunc::one;
    vec![
        RefExpansion {
            source: (1, 0),
            target: (0, 1),
            n: 1,
            terms: vec![
                (vec![], 1, one()),
                (vec![1], 0, qp(1).neg()),
                (vec![0, 1], 1, qp(3).div(&qi(2))),
                (vec![1, 0, 1], 0, qp(4).div(&qi(2)).neg()),
            ],
        },
        RefExpansion {
            source: (0, 1),
            target: (1, 0),
            n: 1,
            terms: vec![
                (vec![], 0, one()),
                (vec![0], 1, qp(1).neg()),
                (vec![1, 0], 0, qp(3).div(&qi(2))),
                (vec![0, 1, 0], 1, qp(4).div(&qi(2)).neg()),
            ],
        },
        RefExpansion {
            source: (2, 0),
            target: (1, 1),
            n: 1,
            terms: vec![
                (vec![], 1, one()),
                (vec![1], 0, qp(1).neg()),
                (vec![1, 0], 1, qp(4).div(&one().sub(&qi(3).mul(&qi(3))))),
                (
                    vec![0, 1],
                    1,
                    qp(4).mul(&qi(3)).div(&one().sub(&qi(3).mul(&qi(3)))).neg(),
                ),
            ],
        },
        RefExpansion {
            source: (3, 0),
            target: (2, 1),
            n: 1,
            terms: vec![
                (vec![], 1, one()),
                (vec![1], 0, qp(1).neg()),
                (vec![0, 1], 1, qp(5).mul(&qi(3)).div(&qi(4).add(&qi(6)))),
                (vec![1, 0], 1, qp(5).div(&qi(4).add(&qi(6))).neg()),
            ],
        },
        RefExpansion {
            source: (2, 1),
            target: (3, 0),
            n: 1,
            terms: vec![
                (vec![], 0, one()),
                (vec![0], 1, qp(3).div(&qi(3)).neg()),
                (vec![1, 0], 0, qp(5).div(&qi(2).mul(&qi(3)))),
            ],
        },
        RefExpansion {
            source: (2, 1),
            target: (1, 2),
            n: 1,
            terms: vec![
                (vec![], 1, one()),
                (vec![1], 0, qp(2).div(&qi(2)).neg()),
                (
                    vec![0, 1],
                    1,
                    qp(5).mul(&qi(4)).div(&qi(2).mul(&qi(3).mul(&qi(4)).sub(&qi(2)))),
                ),
                (
                    vec![1, 0],
                    1,
                    qp(5).div(&qi(3).mul(&qi(4)).sub(&qi(2))).neg(),
                ),
            ],
        },
        RefExpansion {
            source: (3, 0),
            target: (1, 2),
            n: 2,
            terms: vec![
                (vec![], 2, one()),
                (vec![1], 1, qp(2).neg()),
                (vec![1, 1], 0, qp(2).div(&qi(2))),
                (
                    vec![0, 1],
                    2,
                    qp(5).mul(&qi(4)).div(&qi(4).mul(&qi(3)).sub(&qi(2))),
                ),
                (
                    vec![1, 0],
                    2,
                    qp(5).mul(&qi(2)).div(&qi(4).mul(&qi(3)).sub(&qi(2))).neg(),
                ),
            ],
        },
    ]
}

/// Reference images of the impurity block generators on the
/// rationalised bases.
#[allow(clippy::type_complexity)]
pub fn type2_images() -> Vec<(i64, Vec<(Vec<u8>, i64, RatFunc)>)> {
    let qi = q_integer;
    let qp = RatFunc::q_pow;
    vec![
        (
            1,
            vec![
                (vec![], 2, RatFunc::one()),
                (vec![1], 1, qp(2).neg()),
                (vec![0, 1], 2, qp(4).div(&qi(2))),
            ],
        ),
        (
            0,
            vec![
                (vec![], 1, RatFunc::one()),
                (vec![1], 0, qp(1).neg()),
                (vec![0, 1], 1, qp(4).div(&qi(2))),
            ],
        ),
    ]
}

/// A listed highest-weight vector, with terms
/// `(first-leg word, second-leg word, coefficient)`.
pub struct RefOmega {
    pub xi: (i64, i64),
    pub eta: (i64, i64),
    pub a: i64,
    pub degree: usize,
    pub terms: Vec<(Vec<u8>, Vec<u8>, RatFunc)>,
}

/// The twelve listed vectors (four per tensor-space family, with the
/// mirrored quartet written out explicitly).
pub fn omega_vectors() -> Vec<RefOmega> {
    let qi = q_integer;
    let qp = RatFunc::q_pow;
    let one = RatFunc::one;
    let three_sq = || qi(3).mul(&qi(3));
    vec![
        RefOmega {
            xi: (2, 0),
            eta: (1, 0),
            a: 0,
            degree: 0,
            terms: vec![(vec![], vec![], one())],
        },
        RefOmega {
            xi: (2, 0),
            eta: (1, 0),
            a: 2,
            degree: 1,
            terms: vec![
                (vec![], vec![0], one()),
                (vec![0], vec![], qp(2).div(&qi(2)).neg()),
            ],
        },
        RefOmega {
            xi: (2, 0),
            eta: (1, 0),
            a: 2,
            degree: 3,
            terms: vec![
                (vec![], vec![0, 1, 0], one().div(&qi(2))),
                (vec![0], vec![1, 0], qp(2).div(&qi(2).mul(&qi(2))).neg()),
                (vec![1, 0], vec![0], qp(4).div(&qi(2).mul(&qi(2)))),
                (
                    vec![1, 0, 0],
                    vec![],
                    qp(6).div(&qi(2).mul(&qi(2)).mul(&qi(4).sub(&qi(2)))),
                ),
                (
                    vec![0, 1, 0],
                    vec![],
                    qp(6)
                        .mul(&one().sub(&qi(3)))
                        .div(&qi(2).mul(&qi(2)).mul(&qi(4).sub(&qi(2)))),
                ),
            ],
        },
        RefOmega {
            xi: (2, 0),
            eta: (0, 1),
            a: 1,
            degree: 0,
            terms: vec![(vec![], vec![], one())],
        },
        RefOmega {
            xi: (2, 0),
            eta: (0, 1),
            a: 1,
            degree: 2,
            terms: vec![
                (vec![], vec![0, 1], one().div(&qi(2))),
                (vec![0], vec![1], qp(2).div(&qi(2)).neg()),
                (vec![1, 0], vec![], qp(4).div(&qi(2).mul(&qi(2)))),
            ],
        },
        RefOmega {
            xi: (2, 0),
            eta: (0, 1),
            a: 3,
            degree: 3,
            terms: vec![
                (vec![], vec![0, 0, 1], one().div(&qi(2))),
                (vec![0], vec![0, 1], qp(2).div(&qi(2)).neg()),
                (vec![0, 0], vec![1], qp(2).div(&qi(2))),
                (
                    vec![0, 1, 0],
                    vec![],
                    qp(6).div(&qi(2).mul(&qi(4).sub(&qi(2)))),
                ),
                (
                    vec![1, 0, 0],
                    vec![],
                    qp(6).div(&qi(2).mul(&qi(4).sub(&qi(2)))).neg(),
                ),
            ],
        },
        RefOmega {
            xi: (1, 1),
            eta: (1, 0),
            a: 1,
            degree: 0,
            terms: vec![(vec![], vec![], one())],
        },
        RefOmega {
            xi: (1, 1),
            eta: (1, 0),
            a: 3,
            degree: 1,
            terms: vec![(vec![], vec![0], one()), (vec![0], vec![], qp(1).neg())],
        },
        RefOmega {
            xi: (1, 1),
            eta: (1, 0),
            a: 1,
            degree: 2,
            terms: vec![
                (vec![], vec![1, 0], one().div(&qi(2))),
                (vec![1], vec![0], qp(1).neg()),
                (vec![1, 0], vec![], qp(4).div(&one().sub(&three_sq()))),
                (
                    vec![0, 1],
                    vec![],
                    qp(4).mul(&qi(3)).div(&one().sub(&three_sq())).neg(),
                ),
            ],
        },
        RefOmega {
            xi: (1, 1),
            eta: (1, 0),
            a: 3,
            degree: 3,
            terms: vec![
                (vec![], vec![0, 1, 0], one().div(&qi(2))),
                (vec![0], vec![1, 0], qp(1).div(&qi(2)).neg()),
                (vec![0, 1], vec![0], qp(4).div(&one().sub(&three_sq()))),
                (
                    vec![1, 0],
                    vec![0],
                    qp(4).mul(&qi(3)).div(&one().sub(&three_sq())).neg(),
                ),
                (
                    vec![0, 0, 1],
                    vec![],
                    qp(5).div(&one().sub(&three_sq())).neg(),
                ),
                (
                    vec![0, 1, 0],
                    vec![],
                    qp(5).mul(&qi(3)).div(&one().sub(&three_sq())),
                ),
            ],
        },
        RefOmega {
            xi: (1, 1),
            eta: (0, 1),
            a: 2,
            degree: 0,
            terms: vec![(vec![], vec![], one())],
        },
        RefOmega {
            xi: (1, 1),
            eta: (0, 1),
            a: 0,
            degree: 1,
            terms: vec![(vec![], vec![1], one()), (vec![1], vec![], qp(1).neg())],
        },
        RefOmega {
            xi: (1, 1),
            eta: (0, 1),
            a: 2,
            degree: 2,
            terms: vec![
                (vec![], vec![0, 1], one().div(&qi(2))),
                (vec![0], vec![1], qp(1).neg()),
                (vec![0, 1], vec![], qp(4).div(&one().sub(&three_sq()))),
                (
                    vec![1, 0],
                    vec![],
                    qp(4).mul(&qi(3)).div(&one().sub(&three_sq())).neg(),
                ),
            ],
        },
        RefOmega {
            xi: (1, 1),
            eta: (0, 1),
            a: 0,
            degree: 3,
            terms: vec![
                (vec![], vec![1, 0, 1], one().div(&qi(2))),
                (vec![1], vec![0, 1], qp(1).div(&qi(2)).neg()),
                (vec![1, 0], vec![1], qp(4).div(&one().sub(&three_sq()))),
                (
                    vec![0, 1],
                    vec![1],
                    qp(4).mul(&qi(3)).div(&one().sub(&three_sq())).neg(),
                ),
                (
                    vec![1, 1, 0],
                    vec![],
                    qp(5).div(&one().sub(&three_sq())).neg(),
                ),
                (
                    vec![1, 0, 1],
                    vec![],
                    qp(5).mul(&qi(3)).div(&one().sub(&three_sq())),
                ),
            ],
        },
    ]
}

/// The vacuum series by defect-class signature: gaps between successive
/// defect sites (wide gaps capped at four), the defect values, and the
/// class coefficient.
pub struct RefVacClass {
    pub gaps: Vec<usize>,
    pub values: Vec<i64>,
    pub coeff: RefSeries,
}

pub fn vacuum_classes() -> Vec<RefVacClass> {
    let mk = |gaps: Vec<usize>, values: Vec<i64>, terms, ord| RefVacClass {
        gaps,
        values,
        coeff: RefSeries::new(terms, ord),
    };
    vec![
        mk(vec![], vec![], vec![t(0, 0, 1, 1)], 8),
        mk(vec![], vec![2], vec![t(2, 0, -1, 1), t(6, 0, 2, 1)], 8),
        mk(vec![4], vec![2, 2], vec![t(4, 0, 1, 1)], 8),
        mk(vec![2], vec![2, 2], vec![t(4, 0, 2, 1)], 8),
        mk(vec![4, 4], vec![2, 2, 2], vec![t(6, 0, -1, 1)], 8),
        mk(vec![2, 4], vec![2, 2, 2], vec![t(6, 0, -2, 1)], 8),
        mk(vec![4, 2], vec![2, 2, 2], vec![t(6, 0, -2, 1)], 8),
        mk(vec![2, 2], vec![2, 2, 2], vec![t(6, 0, -5, 1)], 8),
        mk(vec![1, 1], vec![2, 3, 2], vec![t(6, 0, -1, 1)], 8),
    ]
}

/// Normalised column tables: output-path defect values, whether the
/// first defect sits at site two, and the expected coefficient.
pub struct RefColumnClass {
    pub values: Vec<i64>,
    pub at_site_two: bool,
    pub coeff: RefSeries,
}

pub fn column_classes(m_label: i64) -> Vec<RefColumnClass> {
    let mk = |values: Vec<i64>, at2: bool, terms, ord| RefColumnClass {
        values,
        at_site_two: at2,
        coeff: RefSeries::new(terms, ord),
    };
    match m_label {
        1 => vec![
            mk(vec![], false, vec![t(0, 0, 1, 1)], 8),
            mk(
                vec![2],
                true,
                vec![t(2, 0, -1, 1), t(6, 0, 1, 1), t(6, 2, 1, 1)],
                8,
            ),
            mk(vec![2], false, vec![t(2, 0, -1, 1), t(6, 0, 2, 1)], 8),
        ],
        2 => vec![
            mk(vec![], false, vec![t(0, 0, 1, 1)], 8),
            mk(vec![3], true, vec![t(2, 0, -1, 1), t(6, 0, 2, 1)], 8),
            mk(vec![0], false, vec![t(2, 0, -1, 1), t(6, 0, 3, 1)], 8),
            mk(vec![3], false, vec![t(2, 0, -1, 1), t(6, 0, 3, 1)], 8),
        ],
        _ => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_have_expected_sizes() {
        assert_eq!(x_table().len(), 16);
        assert_eq!(y_table().len(), 22);
        assert_eq!(omega_vectors().len(), 14);
        assert_eq!(type1_expansions().len(), 7);
        assert_eq!(vacuum_classes().len(), 9);
    }

    #[test]
    fn ref_series_round_trip() {
        let r = RefSeries::new(vec![t(2, -1, -3, 2)], 7);
        let s = r.to_series();
        assert!(r.matches(&s));
        assert_eq!(s.coeff(2).coeff(-1), rat(-3, 2));
    }
}
