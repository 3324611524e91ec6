//! `(<= k)`-levels of lines that each pass through one of a set of points
//! preprocessed in the dual plane.

mod blocks;
mod complex;
mod index;
mod sweep;

pub use blocks::{Block, BlockDecomposition, Cap};
pub use complex::{LevelComplex, LevelEdge, LevelVertex, Polyline};
pub use index::{
    envelope_complex, heavy_cell_sum, truncated_sizes, BlockStats, LevelIndex, LevelPath, LevelStats, RoundStats,
};
pub use sweep::{baseline_level, baseline_level_of};
