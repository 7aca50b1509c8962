//! Fusion face weights.
//!
//! Explicit formulae exist for the `(n,1)` and `(1,n)` fusion labels;
//! everything else is reached from those by the duality
//! `W^{(m,n)}(lambda, mu, mu', nu) = C^{(n,m)}(nu, mu, mu', lambda)`
//! and is reported as `UnsupportedFusion` when both labels exceed one.
//!
//! The spectral argument of every weight is an exact monomial
//! `coeff * u^a * z^b`, so substitutions such as `z -> z^e`, `z -> 1/z`
//! and the crossing shift `z -> -q^{-1} z` stay inside the exact ring:
//! the weight is regenerated at the shifted argument. Each weight is
//! assembled as a separate numerator and denominator product; at a
//! crossing-shifted argument the two can share an exact zeta-polynomial
//! zero, so checks that touch such points compare cross-multiplied.

pub mod checks;
pub mod numeric;

use std::collections::HashMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::num::{rat_int, Rational};
use crate::qspecial::{double_pochhammer, p_pow, p_uval, pochhammer, s_of, theta_p};
use crate::ratfunc::q_integer;
use crate::series::{Monomial, QSeries};
use crate::weight::{admissible, WeightIndex};

/// A four-corner face configuration `(lambda, mu / mu', nu)` with fusion
/// labels `(m, n)`: `(lambda, mu)` and `(mu', nu)` are `m`-admissible,
/// `(lambda, mu')` and `(mu, nu)` are `n`-admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceConfig {
    pub lambda: WeightIndex,
    pub mu: WeightIndex,
    pub mu_prime: WeightIndex,
    pub nu: WeightIndex,
    pub m: i64,
    pub n: i64,
}

impl FaceConfig {
    pub fn new(
        lambda: WeightIndex,
        mu: WeightIndex,
        mu_prime: WeightIndex,
        nu: WeightIndex,
        m: i64,
        n: i64,
    ) -> Result<Self> {
        let cfg = Self { lambda, mu, mu_prime, nu, m, n };
        if !cfg.is_admissible()? {
            return Err(Error::InadmissibleConfig(format!(
                "({}, {}, {}, {}) with labels ({m}, {n})",
                lambda.a, mu.a, mu_prime.a, nu.a
            )));
        }
        Ok(cfg)
    }

    pub fn is_admissible(&self) -> Result<bool> {
        Ok(admissible((self.lambda, self.mu), self.m)?
            && admissible((self.mu_prime, self.nu), self.m)?
            && admissible((self.lambda, self.mu_prime), self.n)?
            && admissible((self.mu, self.nu), self.n)?)
    }

    pub fn indices(&self) -> (i64, i64, i64, i64) {
        (self.lambda.a, self.mu.a, self.mu_prime.a, self.nu.a)
    }
}

/// The unnormalised `(1,1)` weight families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum W11Kind {
    /// Straight corner `(a, a+-1, a+-1, a+-2)`.
    Straight,
    /// Direction flip `(a, a+-1, a-+1, a)`; vanishes at unit argument.
    Flip { a: i64, up: bool },
    /// Bend `(a, a+-1, a+-1, a)`; equals one at unit argument.
    Bend { a: i64, up: bool },
}

pub fn classify_w11(cfg: &FaceConfig) -> Result<W11Kind> {
    let (l, m, mp, n) = cfg.indices();
    if (m - l).abs() != 1 || (mp - l).abs() != 1 || (n - m).abs() != 1 || (n - mp).abs() != 1 {
        return Err(Error::InadmissibleConfig("not a unit-step face".into()));
    }
    if n == l + 2 || n == l - 2 {
        return Ok(W11Kind::Straight);
    }
    if m == mp {
        Ok(W11Kind::Bend { a: l, up: m == l + 1 })
    } else {
        Ok(W11Kind::Flip { a: l, up: m == l + 1 })
    }
}

/// A value held as `prefactor * num / den`, with `num` and `den` unit
/// products. Division is deferred so that shared exact zeros (which
/// appear at crossing-shifted arguments) never have to be inverted.
#[derive(Clone, Debug)]
pub struct WeightParts {
    pub prefactor: Monomial,
    pub num: QSeries,
    pub den: QSeries,
}

impl WeightParts {
    fn one(order: i64) -> Self {
        Self { prefactor: Monomial::one(), num: QSeries::one(order), den: QSeries::one(order) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Collapse to a single series; requires an invertible denominator.
    pub fn value(&self) -> Result<QSeries> {
        Ok(self.num.div(&self.den)?.mul_monomial(&self.prefactor))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            prefactor: self.prefactor.mul(&other.prefactor),
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }
}

fn cache_key(cfg: &FaceConfig, arg: &Monomial, order: i64) -> (i64, i64, i64, i64, i64, i64, i64, i64, bool) {
    let (l, m, mp, n) = cfg.indices();
    let neg = arg.coeff < Rational::from_integer(0.into());
    (l, m, mp, n, cfg.m, cfg.n, arg.upow, arg.zpow * 1_000 + order, neg)
}

/// Evaluation context for one level `k`, with a per-argument weight cache.
pub struct WeightCtx {
    pub k: i64,
    cache: HashMap<(i64, i64, i64, i64, i64, i64, i64, i64, bool), QSeries>,
}

impl WeightCtx {
    pub fn new(k: i64) -> Self {
        Self { k, cache: HashMap::new() }
    }

    fn s(&self) -> Rational {
        s_of(self.k)
    }

    fn ppow(&self, x: &Rational) -> Monomial {
        p_pow(x, self.k)
    }

    fn deep(&self, m: Monomial, order: i64) -> QSeries {
        QSeries::monomial(m, order + 400)
    }

    /// `(x; p)_inf` as a unit product (finitely many exact factors
    /// allowed for non-positive valuations).
    fn poch_p(&self, x: Monomial, order: i64) -> Result<QSeries> {
        let p = self.deep(Monomial::u_pow(p_uval(self.k)), order);
        let a = self.deep(x, order);
        if a.valuation() >= 0 {
            pochhammer(&a, &p, order)
        } else {
            general_neg_poch(&a, &p, order)
        }
    }

    /// Theta as a three-product numerator bundle (never divides).
    fn theta_parts(&self, z: Monomial, order: i64) -> Result<QSeries> {
        theta_p(&self.deep(z, order), self.k, order)
    }

    /// Unnormalised `(1,1)` weight at an exact argument (value form;
    /// safe away from crossing-singular arguments).
    pub fn w11_bar_at(&mut self, cfg: &FaceConfig, arg: &Monomial, order: i64) -> Result<QSeries> {
        self.w11_bar_parts(cfg, arg, order)?.value()
    }

    /// Unnormalised `(1,1)` weight in parts form.
    pub fn w11_bar_parts(&mut self, cfg: &FaceConfig, arg: &Monomial, order: i64) -> Result<WeightParts> {
        if cfg.m != 1 || cfg.n != 1 {
            return Err(Error::UnsupportedFusion("w11_bar requires labels (1,1)".into()));
        }
        if !cfg.is_admissible()? {
            return Err(Error::InadmissibleConfig(format!("{:?}", cfg.indices())));
        }
        let s = self.s();
        let work = order + 8;
        match classify_w11(cfg)? {
            W11Kind::Straight => Ok(WeightParts::one(order)),
            W11Kind::Flip { a, up } => {
                // Upward flips carry r = 2(a+1)s, downward ones 1 - r.
                let r_minus = s.clone() * rat_int(2 * (a + 1));
                let r = if up { r_minus } else { Rational::one() - r_minus };
                let two_s = s.clone() * rat_int(2);
                let arg2 = arg.square();
                // G_p(r)^2 / (G_p(r + 2s) G_p(r - 2s)): balanced, so only
                // the Pochhammer parts survive.
                let num = self
                    .poch_p(self.ppow(&(&r + &two_s)), work)?
                    .mul(&self.poch_p(self.ppow(&(&r - &two_s)), work)?)
                    .mul(&self.theta_parts(arg2.clone(), work)?);
                let den = self
                    .poch_p(self.ppow(&r), work)?
                    .pow(2)
                    .mul(&self.theta_parts(arg2.mul(&Monomial::q_pow(2)), work)?);
                Ok(WeightParts { prefactor: Monomial::q_pow(1), num: num.truncate(order + 12), den: den.truncate(order + 12) })
            }
            W11Kind::Bend { a, up } => {
                let r_minus = s.clone() * rat_int(2 * (a + 1));
                let r = if up { Rational::one() - r_minus } else { r_minus };
                let pr = self.ppow(&r);
                let arg2 = arg.square();
                let num = self
                    .theta_parts(Monomial::q_pow(2), work)?
                    .mul(&self.theta_parts(pr.mul(&arg2), work)?);
                let den = self
                    .theta_parts(arg2.mul(&Monomial::q_pow(2)), work)?
                    .mul(&self.theta_parts(pr, work)?);
                Ok(WeightParts { prefactor: arg.clone(), num: num.truncate(order + 12), den: den.truncate(order + 12) })
            }
        }
    }

    /// The double-product quartet behind the eta correction factor, as
    /// numerator and denominator bundles: shifts `q^{1+n}, q^{3-n}` over
    /// `q^{1-n}, q^{3+n}` applied to `p * z`.
    fn eta_parts(&self, z: Monomial, n: i64, order: i64) -> Result<(QSeries, QSeries)> {
        let pu = p_uval(self.k);
        let p = self.deep(Monomial::u_pow(pu), order);
        let q4 = self.deep(Monomial::q_pow(4), order);
        let dp = |sft: i64| -> Result<QSeries> {
            double_pochhammer(&self.deep(z.mul(&Monomial::u_pow(pu + 2 * sft)), order), &p, &q4, order)
        };
        Ok((dp(1 + n)?.mul(&dp(3 - n)?), dp(1 - n)?.mul(&dp(3 + n)?)))
    }

    /// `kappa^{(n,1)}` split into (prefactor, numerator, denominator).
    fn kappa_parts(&self, n: i64, arg: &Monomial, order: i64) -> Result<(Monomial, QSeries, QSeries)> {
        let apex = 2 + n + 1;
        let gap = 2 + (n - 1).abs();
        let q4 = self.deep(Monomial::q_pow(4), order);
        let z2 = arg.square();
        let z2i = z2.inv();
        let f = |qexp: i64, zz: &Monomial| -> Result<QSeries> {
            let a = self.deep(zz.mul(&Monomial::q_pow(qexp)), order);
            if a.valuation() >= 0 {
                pochhammer(&a, &q4, order)
            } else {
                general_neg_poch(&a, &q4, order)
            }
        };
        let num = f(apex, &z2)?.mul(&f(gap, &z2i)?);
        let den = f(apex, &z2i)?.mul(&f(gap, &z2)?);
        Ok((arg.pow(n.min(1)), num, den))
    }

    /// Connection coefficient `C^{(n,1)}` at an exact argument, with the
    /// `1/kappa^{(n,1)}` normalisation, in parts form.
    pub fn conn_n1_parts(&mut self, cfg: &FaceConfig, arg: &Monomial, order: i64) -> Result<WeightParts> {
        if cfg.n != 1 {
            return Err(Error::UnsupportedFusion(format!(
                "connection coefficients need labels (n,1), got ({}, {})",
                cfg.m, cfg.n
            )));
        }
        if !cfg.is_admissible()? {
            return Err(Error::InadmissibleConfig(format!("{:?}", cfg.indices())));
        }
        let k = self.k;
        let n = cfg.m;
        let s = self.s();
        let (a, mu, mup, nu) = cfg.indices();
        let mu_up = mu == nu + 1;
        let mup_up = mup == a + 1;
        // j from nu_{+-} + (n - 2j) rho = lambda on the L1 coefficient.
        let base = if mu_up { nu + 1 } else { nu - 1 };
        let twice_j = n + base - a;
        if twice_j % 2 != 0 || !(0..=2 * n).contains(&twice_j) {
            return Err(Error::NoValidJ(format!("quad {:?}, labels ({n},1)", cfg.indices())));
        }
        let j = twice_j / 2;
        let work = order + 24;

        // eta(arg^2) / eta(arg^-2) as bundles.
        let (eta_num_a, eta_den_a) = self.eta_parts(arg.square(), n, work)?;
        let (eta_num_b, eta_den_b) = self.eta_parts(arg.square().inv(), n, work)?;

        let sx = |m: i64| s.clone() * rat_int(m);
        let one = Rational::one();
        let sqrt_ratio = |top: i64, bot: i64| -> Result<QSeries> {
            if bot == 0 {
                return Err(Error::NoValidJ(format!(
                    "vanishing q-integer [{bot}] under a square root"
                )));
            }
            let num = q_integer(top).to_series(work + 40);
            let den = q_integer(bot).to_series(work + 40);
            num.div(&den)?.sqrt()
        };
        // gamma ratio in parts: numerator gammas contribute their
        // Pochhammers to the denominator bundle and vice versa; balance
        // of the (1-p) prefactors holds case by case.
        let gam = |this: &Self, gnum: [Rational; 2], gden: [Rational; 2]| -> Result<(QSeries, QSeries)> {
            let balance = (one.clone() - &gnum[0]) + (one.clone() - &gnum[1])
                - (one.clone() - &gden[0])
                - (one.clone() - &gden[1]);
            if !num_traits::Zero::is_zero(&balance) {
                return Err(Error::UnbalancedPrefactor(format!("defect {balance}")));
            }
            let n0 = this.poch_p(this.ppow(&gden[0]), work)?;
            let n1 = this.poch_p(this.ppow(&gden[1]), work)?;
            let d0 = this.poch_p(this.ppow(&gnum[0]), work)?;
            let d1 = this.poch_p(this.ppow(&gnum[1]), work)?;
            Ok((n0.mul(&n1), d0.mul(&d1)))
        };
        let theta_den_arg = arg.square().mul(&Monomial::q_pow(1 + n));

        let (pre, g_num, g_den, th_num_arg, extra_sqrt): (Monomial, QSeries, QSeries, Monomial, Option<QSeries>) =
            if mu_up && mup_up {
                let (gn, gd) = gam(
                    self,
                    [sx(2 * (a + 2 * j - n)), one.clone() - sx(2 * (a + 1))],
                    [one.clone() + sx(2 * (j - 1 - n)), sx(2 * j)],
                )?;
                (
                    arg.mul(&Monomial::u_pow(n - 2 * j + 1)),
                    gn,
                    gd,
                    arg.square()
                        .mul(&self.ppow(&Rational::one()))
                        .mul(&Monomial::q_pow(n - 1 - 2 * (a + j))),
                    Some(sqrt_ratio(n - j + 1, j)?),
                )
            } else if mu_up && !mup_up {
                let (gn, gd) = gam(
                    self,
                    [sx(2 * (a + 2 * j - n)), sx(2 * (a + 1))],
                    [sx(2 * (a + j - n)), sx(2 * (a + j + 1))],
                )?;
                (
                    Monomial::q_pow(j),
                    gn,
                    gd,
                    arg.square().mul(&Monomial::q_pow(n + 1 - 2 * j)),
                    None,
                )
            } else if !mu_up && mup_up {
                let (gn, gd) = gam(
                    self,
                    [one.clone() - sx(2 * (a + 2 * j - n + 2)), one.clone() - sx(2 * (a + 1))],
                    [one.clone() - sx(2 * (a + j + 2)), one.clone() - sx(2 * (a + j + 1 - n))],
                )?;
                (
                    Monomial::q_pow(n - j),
                    gn,
                    gd,
                    arg.square().mul(&Monomial::q_pow(2 * j + 1 - n)),
                    None,
                )
            } else {
                let (gn, gd) = gam(
                    self,
                    [one.clone() - sx(2 * (a + 2 * j - n + 2)), sx(2 * (a + 1))],
                    [one.clone() - sx(2 * (1 + j)), sx(2 * (n - j))],
                )?;
                (
                    arg.mul(&Monomial::u_pow(2 * j - n + 1)),
                    gn,
                    gd,
                    arg.square().mul(&Monomial::q_pow(2 * a + 2 * j + 3 - n)),
                    Some(sqrt_ratio(j + 1, n - j)?),
                )
            };

        let th_num = theta_p(&self.deep(th_num_arg, work), k, work)?;
        let th_den = theta_p(&self.deep(theta_den_arg, work), k, work)?;
        let (kap_pre, kap_num, kap_den) = self.kappa_parts(n, arg, work)?;

        let mut num = th_num.mul(&g_num).mul(&eta_num_a).mul(&eta_den_b).mul(&kap_den);
        if let Some(sq) = extra_sqrt {
            num = num.mul(&sq);
        }
        let den = th_den.mul(&g_den).mul(&eta_den_a).mul(&eta_num_b).mul(&kap_num);
        Ok(WeightParts {
            prefactor: pre.mul(&kap_pre.inv()),
            num: num.truncate(order + 12),
            den: den.truncate(order + 12),
        })
    }

    /// `C^{(n,1)}` as a plain series (divides; safe at ordinary
    /// arguments). By the final identification this equals the face
    /// weight `W^{(n,1)}` on the same quadruple.
    pub fn conn_n1_at(&mut self, cfg: &FaceConfig, arg: &Monomial, order: i64) -> Result<QSeries> {
        let key = cache_key(cfg, arg, order);
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let value = self.conn_n1_parts(cfg, arg, order)?.value()?.truncate(order);
        self.cache.insert(key, value.clone());
        Ok(value)
    }

    /// `C^{(1,n)}(lambda, mu, mu', nu) = C^{(n,1)}(nu, mu, mu', lambda)`.
    pub fn conn_1n_at(&mut self, cfg: &FaceConfig, arg: &Monomial, order: i64) -> Result<QSeries> {
        if cfg.m != 1 {
            return Err(Error::UnsupportedFusion(format!(
                "expected labels (1,n), got ({}, {})",
                cfg.m, cfg.n
            )));
        }
        let swapped = FaceConfig::new(cfg.nu, cfg.mu, cfg.mu_prime, cfg.lambda, cfg.n, 1)?;
        self.conn_n1_at(&swapped, arg, order)
    }

    /// Face weight in parts form. Supported labels: `(n,1)` and `(1,n)`.
    pub fn face_weight_parts(&mut self, cfg: &FaceConfig, arg: &Monomial, order: i64) -> Result<WeightParts> {
        match (cfg.m, cfg.n) {
            (_, 1) => self.conn_n1_parts(cfg, arg, order),
            (1, _) => {
                let swapped = FaceConfig::new(cfg.nu, cfg.mu, cfg.mu_prime, cfg.lambda, cfg.n, 1)?;
                self.conn_n1_parts(&swapped, arg, order)
            }
            (m, n) => Err(Error::UnsupportedFusion(format!(
                "no explicit formula for labels ({m}, {n})"
            ))),
        }
    }

    /// Face weight `W^{(m,n)}` at an exact spectral argument.
    pub fn face_weight_at(&mut self, cfg: &FaceConfig, arg: &Monomial, order: i64) -> Result<QSeries> {
        match (cfg.m, cfg.n) {
            (_, 1) => self.conn_n1_at(cfg, arg, order),
            (1, _) => {
                let swapped = FaceConfig::new(cfg.nu, cfg.mu, cfg.mu_prime, cfg.lambda, cfg.n, 1)?;
                self.conn_n1_at(&swapped, arg, order)
            }
            (m, n) => Err(Error::UnsupportedFusion(format!(
                "no explicit formula for labels ({m}, {n})"
            ))),
        }
    }

    /// Formal-argument convenience: the weight as a series in `z`.
    pub fn face_weight(&mut self, cfg: &FaceConfig, order: i64) -> Result<QSeries> {
        self.face_weight_at(cfg, &Monomial::zeta(), order)
    }

    /// The crossing boundary factor, as the Pochhammer part of the
    /// q-gamma ratio attached to a unit-step pair. Both step directions
    /// carry the same `(1-p)^{-2s}` prefactor, which cancels in every
    /// crossing ratio and is therefore dropped here.
    pub fn crossing_g(&mut self, pair: (WeightIndex, WeightIndex), order: i64) -> Result<QSeries> {
        let (x, y) = pair;
        if x.level != y.level || (x.a - y.a).abs() != 1 {
            return Err(Error::InvalidPair(format!("({}, {})", x.a, y.a)));
        }
        let s = self.s();
        let a = x.a;
        let (num, den) = if y.a == a + 1 {
            (
                Rational::one() - s.clone() * rat_int(2 * (a + 1)),
                Rational::one() - s.clone() * rat_int(2 * (a + 2)),
            )
        } else {
            (s.clone() * rat_int(2 * (a + 1)), s.clone() * rat_int(2 * a))
        };
        let fnum = self.poch_p(self.ppow(&den), order)?;
        let fden = self.poch_p(self.ppow(&num), order)?;
        fnum.div(&fden)
    }

    /// Same factor in parts form (numerator, denominator).
    pub fn crossing_g_parts(
        &mut self,
        pair: (WeightIndex, WeightIndex),
        order: i64,
    ) -> Result<(QSeries, QSeries)> {
        let (x, y) = pair;
        if x.level != y.level || (x.a - y.a).abs() != 1 {
            return Err(Error::InvalidPair(format!("({}, {})", x.a, y.a)));
        }
        let s = self.s();
        let a = x.a;
        let (num, den) = if y.a == a + 1 {
            (
                Rational::one() - s.clone() * rat_int(2 * (a + 1)),
                Rational::one() - s.clone() * rat_int(2 * (a + 2)),
            )
        } else {
            (s.clone() * rat_int(2 * (a + 1)), s.clone() * rat_int(2 * a))
        };
        Ok((self.poch_p(self.ppow(&den), order)?, self.poch_p(self.ppow(&num), order)?))
    }
}

/// Pochhammer with finitely many exact non-positive-valuation factors.
fn general_neg_poch(a: &QSeries, b: &QSeries, order: i64) -> Result<QSeries> {
    let va = a.valuation();
    let vb = b.valuation();
    let mut pad = 0i64;
    let mut n = 0i64;
    while va + n * vb <= 0 {
        pad += -(va + n * vb) + 1;
        n += 1;
    }
    let work = order + pad;
    let mut acc = QSeries::one(work);
    let mut abn = a.clone();
    let mut m = 0i64;
    while va + m * vb < work {
        let factor = QSeries::one(work).sub(&abn.truncate(work.min(abn.truncation_order())));
        if factor.truncation_order() < work {
            return Err(Error::DivergentProduct("argument known too shallowly".into()));
        }
        acc = acc.mul(&factor);
        abn = abn.mul(b);
        m += 1;
    }
    Ok(acc.truncate(order))
}

/// All admissible `(m, n)`-faces at level `k`.
pub fn enumerate_faces(k: i64, m: i64, n: i64) -> Vec<FaceConfig> {
    let mut out = vec![];
    for l in WeightIndex::all(k) {
        for mu in WeightIndex::all(k) {
            for mp in WeightIndex::all(k) {
                for nu in WeightIndex::all(k) {
                    if let Ok(cfg) = FaceConfig::new(l, mu, mp, nu, m, n) {
                        out.push(cfg);
                    }
                }
            }
        }
    }
    out
}
