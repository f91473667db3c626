//! Genus-one 1-point functions of Virasoro vacuum descendants, kept as
//! differential operators acting on an unspecified base partition function.

mod diffop;
mod recursion;
mod structure;

pub use diffop::{specialize, BasePartition, Basis, DiffOp};
pub use recursion::{one_point, OnePointEngine};
pub use structure::{structure_check, StructureEntry, StructureReport};
