//! Term representations shared by the three calculi.

pub mod cc;
pub mod context;
pub mod dcc;
pub mod name;

pub use context::{label_subset, label_union, LabelContext, LabelEntry, TypeContext};
pub use name::{LabelId, Name, OrderedNames};

pub type CcContext = TypeContext<cc::Tm>;
pub type DccContext = TypeContext<dcc::Tm>;
