//! The CC kernel: reduction, equivalence, type inference with derivations,
//! and free-variable telescopes.

pub mod check;
pub mod derivation;
pub mod equiv;
pub mod reduce;
pub mod telescope;

pub use check::{Checker, Mode};
pub use derivation::{Derivation, Rule};
pub use telescope::{fv_telescope, fv_telescope_of};
