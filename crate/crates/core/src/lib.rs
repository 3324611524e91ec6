//! Preprocessed planar line arrangements.
//!
//! Given `n` lines up front, [`hull::HullIndex`] answers convex hull queries
//! for point sets that place one point on each line. Dually,
//! [`levels::LevelIndex`] preprocesses `n` points and answers `(<=k)`-level
//! queries for line sets that put one line through each point. Every
//! predicate is evaluated exactly over rationals.

pub mod arrangement;
pub mod bench;
pub mod error;
pub mod exact;
pub mod gen;
pub mod geom;
pub mod hull;
pub mod io;
pub mod levels;
pub mod oracle;
pub mod variants;

pub use error::{GeomError, Result};
pub use exact::ExactCoord;
pub use geom::{Line, Orientation, Point, Side};
