//! The DCC kernel: label reduction, equivalence, typing and label-context
//! well-formedness.

pub mod check;
pub mod equiv;
pub mod reduce;

pub use check::{infer, wf, wf_labels, DccChecker};
pub use equiv::equiv;
pub use reduce::{normalize, reduce_step};
