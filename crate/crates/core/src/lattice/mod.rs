//! Path spaces, the corner-transfer vacuum, the path embedding of
//! highest-weight vectors, and the half-infinite column operators,
//! culminating in the end-to-end coefficient comparison between the
//! lattice and module pictures.

pub mod column;
pub mod conjecture;
pub mod ctm;
pub mod iota;
pub mod path;

pub use column::{f_norm_reference, lattice_z_apply};
pub use conjecture::{conjecture_check, ConjectureReport};
pub use ctm::{ctm_coefficients, ctm_local, solve_vacuum};
pub use iota::{iota_coeff, IotaOutcome};
pub use path::{class_signature, enumerate_paths, ClassSig, FinitePath, PathBoundary, PathVector};
