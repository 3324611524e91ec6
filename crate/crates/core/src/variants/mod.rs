//! Alternative hull queries built on top of the per-line index, plus
//! rotating-calipers measures of a finished hull.

mod calipers;
mod giftwrap;
mod outsens;
mod tradeoff;
#[cfg(test)]
mod tests;

pub use calipers::{diameter, width, Strip};
pub use giftwrap::{gift_wrap_query, tangent, tangent_linear, wrap_groups, wraps_past};
pub use outsens::{groups_for, guess_sequence, OutputSensitiveIndex};
pub use tradeoff::TradeoffIndex;
