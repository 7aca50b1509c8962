//! Property suites for the face weights: the face Yang-Baxter equation,
//! the inversion (unitarity) relation, crossing symmetry and the
//! half-turn symmetry. All run over exact series and report the first
//! counterexample on failure.

use crate::error::{Error, Result};
use crate::series::{Monomial, QSeries};
use crate::weight::WeightIndex;

use super::{FaceConfig, WeightCtx};

/// Weight at a given quadruple if admissible, else zero (faces outside
/// the admissible set do not contribute to sums).
fn weight_or_zero(
    ctx: &mut WeightCtx,
    quad: (WeightIndex, WeightIndex, WeightIndex, WeightIndex),
    labels: (i64, i64),
    arg: &Monomial,
    order: i64,
) -> Result<QSeries> {
    match FaceConfig::new(quad.0, quad.1, quad.2, quad.3, labels.0, labels.1) {
        Ok(cfg) => ctx.face_weight_at(&cfg, arg, order),
        Err(Error::InadmissibleConfig(_)) => Ok(QSeries::zero(order)),
        Err(e) => Err(e),
    }
}

/// Face Yang-Baxter equation for labels `(m, n, l)` on a fixed boundary
/// hexagon `(alpha, beta, gamma, delta, lambda, mu)`, with the three
/// spectral parameters given as powers `z^{e_i}`.
#[allow(clippy::too_many_arguments)]
pub fn check_ybe(
    ctx: &mut WeightCtx,
    m: i64,
    n: i64,
    l: i64,
    boundary: [WeightIndex; 6],
    exps: (i64, i64, i64),
    order: i64,
) -> Result<bool> {
    let [alpha, beta, gamma, delta, lambda, mu] = boundary;
    let (e1, e2, e3) = exps;
    let z23 = Monomial::zeta().pow(e2 - e3);
    let z12 = Monomial::zeta().pow(e1 - e2);
    let z13 = Monomial::zeta().pow(e1 - e3);
    let mut lhs = QSeries::zero(order);
    let mut rhs = QSeries::zero(order);
    for nu in WeightIndex::all(ctx.k) {
        let t1 = weight_or_zero(ctx, (alpha, nu, mu, lambda), (n, l), &z23, order)?;
        if !t1.is_zero() {
            let t2 = weight_or_zero(ctx, (alpha, beta, nu, gamma), (m, n), &z12, order)?;
            if !t2.is_zero() {
                let t3 = weight_or_zero(ctx, (nu, gamma, lambda, delta), (m, l), &z13, order)?;
                lhs = lhs.add(&t1.mul(&t2).mul(&t3).truncate(order));
            }
        }
        let s1 = weight_or_zero(ctx, (alpha, beta, mu, nu), (m, l), &z13, order)?;
        if !s1.is_zero() {
            let s2 = weight_or_zero(ctx, (mu, nu, lambda, delta), (m, n), &z12, order)?;
            if !s2.is_zero() {
                let s3 = weight_or_zero(ctx, (beta, gamma, nu, delta), (n, l), &z23, order)?;
                rhs = rhs.add(&s1.mul(&s2).mul(&s3).truncate(order));
            }
        }
    }
    Ok(lhs.eq_to_order(&rhs, order.min(lhs.truncation_order()).min(rhs.truncation_order())))
}

/// Inversion relation: `sum_{mu'} W^{(m,n)}(lambda, mu, mu', nu | z)
/// W^{(n,m)}(lambda, mu', alpha, nu | 1/z) = delta_{mu, alpha}`.
pub fn check_inversion(
    ctx: &mut WeightCtx,
    m: i64,
    n: i64,
    boundary: [WeightIndex; 4],
    order: i64,
) -> Result<bool> {
    let [lambda, mu, alpha, nu] = boundary;
    let z = Monomial::zeta();
    let zi = z.inv();
    let mut acc = QSeries::zero(order);
    for mup in WeightIndex::all(ctx.k) {
        let w1 = weight_or_zero(ctx, (lambda, mu, mup, nu), (m, n), &z, order)?;
        if w1.is_zero() {
            continue;
        }
        let w2 = weight_or_zero(ctx, (lambda, mup, alpha, nu), (n, m), &zi, order)?;
        if w2.is_zero() {
            continue;
        }
        acc = acc.add(&w1.mul(&w2).truncate(order));
    }
    let want = if mu == alpha { QSeries::one(order) } else { QSeries::zero(order) };
    Ok(acc.eq_to_order(&want, order.min(acc.truncation_order())))
}

/// Crossing symmetry:
/// `W^{(n,1)}(lambda, mu, mu', nu | -q^{-1} z)
///  = G(lambda, mu')/G(mu, nu) * W^{(1,n)}(mu', lambda, nu, mu | 1/z)`.
///
/// At the shifted argument the weight's numerator and denominator share
/// an exact zeta-polynomial zero, so the identity is compared in
/// cross-multiplied form and never divides.
pub fn check_crossing(
    ctx: &mut WeightCtx,
    n: i64,
    boundary: [WeightIndex; 4],
    order: i64,
) -> Result<bool> {
    let [lambda, mu, mu_prime, nu] = boundary;
    let crossed_arg = Monomial::new(crate::num::rat(-1, 1), -2, 1);
    let lhs = parts_or_zero(ctx, (lambda, mu, mu_prime, nu), (n, 1), &crossed_arg, order)?;
    let rhs = parts_or_zero(
        ctx,
        (mu_prime, lambda, nu, mu),
        (1, n),
        &Monomial::zeta().inv(),
        order,
    )?;
    if lhs.is_zero() && rhs.is_zero() {
        return Ok(true);
    }
    let (g_top_num, g_top_den) = ctx.crossing_g_parts((lambda, mu_prime), order)?;
    let (g_bot_num, g_bot_den) = ctx.crossing_g_parts((mu, nu), order)?;
    let left = lhs
        .num
        .mul_monomial(&lhs.prefactor)
        .mul(&rhs.den)
        .mul(&g_top_den)
        .mul(&g_bot_num);
    let right = rhs
        .num
        .mul_monomial(&rhs.prefactor)
        .mul(&lhs.den)
        .mul(&g_top_num)
        .mul(&g_bot_den);
    let ord = order.min(left.truncation_order()).min(right.truncation_order());
    Ok(left.eq_to_order(&right, ord))
}

fn parts_or_zero(
    ctx: &mut WeightCtx,
    quad: (WeightIndex, WeightIndex, WeightIndex, WeightIndex),
    labels: (i64, i64),
    arg: &Monomial,
    order: i64,
) -> Result<super::WeightParts> {
    match FaceConfig::new(quad.0, quad.1, quad.2, quad.3, labels.0, labels.1) {
        Ok(cfg) => ctx.face_weight_parts(&cfg, arg, order),
        Err(Error::InadmissibleConfig(_)) => Ok(super::WeightParts {
            prefactor: Monomial::one(),
            num: QSeries::zero(order),
            den: QSeries::one(order),
        }),
        Err(e) => Err(e),
    }
}

/// Dynkin-flip symmetry of the explicit weights:
/// `W^{(n,1)}(lambda, mu, mu', nu) = W^{(n,1)}(sigma lambda, ...)` with
/// `sigma: a -> k - a` on every corner. This is the symmetry behind the
/// equal named pairs of `(2,1)` weights.
pub fn check_sigma_flip(
    ctx: &mut WeightCtx,
    n: i64,
    boundary: [WeightIndex; 4],
    order: i64,
) -> Result<bool> {
    let [lambda, mu, mu_prime, nu] = boundary;
    let z = Monomial::zeta();
    let a = weight_or_zero(ctx, (lambda, mu, mu_prime, nu), (n, 1), &z, order)?;
    let b = weight_or_zero(
        ctx,
        (lambda.sigma(), mu.sigma(), mu_prime.sigma(), nu.sigma()),
        (n, 1),
        &z,
        order,
    )?;
    let ord = order.min(a.truncation_order()).min(b.truncation_order());
    Ok(a.eq_to_order(&b, ord))
}

/// Run a suite over every admissible boundary, returning the first
/// failing boundary if any.
pub struct SuiteReport {
    pub checked: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn ybe_suite(ctx: &mut WeightCtx, m: i64, n: i64, l: i64, order: i64) -> Result<SuiteReport> {
    let k = ctx.k;
    let all = WeightIndex::all(k);
    let mut checked = 0;
    let exps = [(2, 1, 0), (3, 1, 0), (3, 2, 0)];
    for &alpha in &all {
        for &beta in &all {
            for &gamma in &all {
                for &delta in &all {
                    for &lambda in &all {
                        for &mu in &all {
                            // Prune boundaries that cannot bound any face.
                            if !(crate::weight::admissible((alpha, beta), m)?
                                && crate::weight::admissible((beta, gamma), n)?
                                && crate::weight::admissible((gamma, delta), l)?
                                && crate::weight::admissible((alpha, mu), n)?
                                && crate::weight::admissible((mu, lambda), l)?
                                && crate::weight::admissible((lambda, delta), m)?)
                            {
                                continue;
                            }
                            checked += 1;
                            for e in exps {
                                if !check_ybe(
                                    ctx,
                                    m,
                                    n,
                                    l,
                                    [alpha, beta, gamma, delta, lambda, mu],
                                    e,
                                    order,
                                )? {
                                    return Ok(SuiteReport {
                                        checked,
                                        failure: Some(format!(
                                            "boundary ({},{},{},{},{},{}) exps {:?}",
                                            alpha.a, beta.a, gamma.a, delta.a, lambda.a, mu.a, e
                                        )),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SuiteReport { checked, failure: None })
}

pub fn inversion_suite(ctx: &mut WeightCtx, m: i64, n: i64, order: i64) -> Result<SuiteReport> {
    let all = WeightIndex::all(ctx.k);
    let mut checked = 0;
    for &lambda in &all {
        for &mu in &all {
            for &alpha in &all {
                for &nu in &all {
                    if !(crate::weight::admissible((lambda, mu), m)?
                        && crate::weight::admissible((mu, nu), n)?
                        && crate::weight::admissible((lambda, alpha), m)?
                        && crate::weight::admissible((alpha, nu), n)?)
                    {
                        continue;
                    }
                    checked += 1;
                    if !check_inversion(ctx, m, n, [lambda, mu, alpha, nu], order)? {
                        return Ok(SuiteReport {
                            checked,
                            failure: Some(format!(
                                "boundary ({},{},{},{})",
                                lambda.a, mu.a, alpha.a, nu.a
                            )),
                        });
                    }
                }
            }
        }
    }
    Ok(SuiteReport { checked, failure: None })
}

pub fn crossing_suite(ctx: &mut WeightCtx, n: i64, order: i64) -> Result<SuiteReport> {
    let mut checked = 0;
    for cfg in super::enumerate_faces(ctx.k, n, 1) {
        checked += 1;
        if !check_crossing(ctx, n, [cfg.lambda, cfg.mu, cfg.mu_prime, cfg.nu], order)? {
            return Ok(SuiteReport {
                checked,
                failure: Some(format!("boundary {:?}", cfg.indices())),
            });
        }
    }
    Ok(SuiteReport { checked, failure: None })
}

pub fn symmetry_suite(ctx: &mut WeightCtx, n: i64, order: i64) -> Result<SuiteReport> {
    let mut checked = 0;
    for cfg in super::enumerate_faces(ctx.k, n, 1) {
        checked += 1;
        if !check_sigma_flip(ctx, n, [cfg.lambda, cfg.mu, cfg.mu_prime, cfg.nu], order)? {
            return Ok(SuiteReport {
                checked,
                failure: Some(format!("boundary {:?}", cfg.indices())),
            });
        }
    }
    Ok(SuiteReport { checked, failure: None })
}
