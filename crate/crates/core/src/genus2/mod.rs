//! Genus-two partition functions and their degeneration limits.

mod closed;
mod degeneration;
mod verify;

pub use closed::*;
pub use degeneration::{degeneration_sum, extract_h, h_closed_form, specialize_sum, DegenerationSum};
pub use verify::*;
