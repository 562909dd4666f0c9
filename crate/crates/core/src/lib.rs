//! Type-preserving defunctionalization for the Calculus of Constructions.

pub mod ccs;
pub mod dcc;
pub mod defun;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod refun;
pub mod surface;
pub mod syntax;

pub use error::{Result, TypeError};
