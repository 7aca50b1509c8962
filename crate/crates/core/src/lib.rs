//! Exact computer algebra for restricted solid-on-solid face models.
//!
//! The crate provides, bottom up:
//!
//! * truncated Laurent series in `u = q^{1/2}` whose coefficients are
//!   Laurent polynomials in a spectral unit, over exact rationals;
//! * q-gamma / theta / double-product special functions and the basic
//!   hypergeometric series they feed;
//! * explicit fusion face weights with their Yang-Baxter, inversion and
//!   crossing property suites;
//! * truncated highest-weight modules of the level-`k` quantized affine
//!   algebra, their tensor products, highest-weight (singular) vectors,
//!   and perturbative vertex-operator expansions;
//! * the corner-transfer-matrix path spaces, the vacuum solve, the path
//!   embedding, and half-infinite column operators, culminating in an
//!   end-to-end coefficient comparison between the lattice and the
//!   module pictures.

pub mod algebra;
pub mod error;
pub mod face;
pub mod golden;
pub mod lattice;
pub mod linalg;
pub mod num;
pub mod qkz;
pub mod qspecial;
pub mod ratfunc;
pub mod series;
pub mod vo;
pub mod weight;
pub mod xz;
pub mod zeta;

pub use error::{Error, Result};
pub use num::Rational;
pub use ratfunc::{q_binomial, q_factorial, q_integer, RatFunc, ZRat};
pub use series::{Monomial, QSeries, DEFAULT_TRUNC};
pub use weight::WeightIndex;
pub use zeta::ZetaPoly;
