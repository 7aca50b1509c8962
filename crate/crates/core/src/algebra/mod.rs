//! Truncated highest-weight modules of the level-`k` quantized affine
//! algebra, their tensor products, and spaces of highest-weight vectors.
//!
//! Everything here computes over exact rational functions of `q`; rank
//! decisions (irreducibility quotients, singular-vector spaces) are
//! exact, never truncated.

pub mod free;
pub mod module;
pub mod omega;
pub mod tensor;

pub use free::{contravariant_gram, free_action, FWord, FreeElement, Generator};
pub use module::{AlgebraCtx, BasisId, HwModule};
pub use omega::{omega_basis, OmegaBasis, OmegaVector};
pub use tensor::TensorElem;
