//! Error taxonomy shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("leading coefficient is not a single nonzero zeta-monomial")]
    NonUnitLeadingCoefficient,
    #[error("series is not a formal square: {0}")]
    NotAFormalSquare(String),
    #[error("infinite product diverges: {0}")]
    DivergentProduct(String),
    #[error("unbalanced q-gamma ratio prefactor: {0}")]
    UnbalancedPrefactor(String),
    #[error("basic hypergeometric denominator vanishes: {0}")]
    PolarArgument(String),
    #[error("weights have different levels")]
    LevelMismatch,
    #[error("face configuration is not admissible: {0}")]
    InadmissibleConfig(String),
    #[error("no index j satisfies the weight condition: {0}")]
    NoValidJ(String),
    #[error("fusion labels not supported by the explicit formulae: {0}")]
    UnsupportedFusion(String),
    #[error("invalid weight pair: {0}")]
    InvalidPair(String),
    #[error("numeric parameters outside the ordered regime: {0}")]
    RegimeViolation(String),
    #[error("requested degree exceeds the constructed module window")]
    DegreeOverflow,
    #[error("no highest-weight vectors at the requested degrees: {0}")]
    EmptySpace(String),
    #[error("weight pair is not admissible for this evaluation module: {0}")]
    InadmissiblePair(String),
    #[error("expansion solution is not unique: {0}")]
    NonUniqueSolution(String),
    #[error("expansion has no solution: {0}")]
    NoSolution(String),
    #[error("overdetermined matching system is inconsistent: {0}")]
    InconsistentSystem(String),
    #[error("coefficient did not stabilise: {0}")]
    StabilizationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
