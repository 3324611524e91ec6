//! Convex hulls of points that arrive one per preprocessed line.

use serde::{Deserialize, Serialize};

use crate::arrangement::{ClosedSide, ConvexChain};
use crate::error::{GeomError, Result};
use crate::geom::{check_distinct_x, Line, Point};

mod engine;
mod graham;
mod gradation;
mod index;
mod oblivious;
#[cfg(test)]
mod tests;

pub use engine::RefinedConflictLists;
pub use graham::graham_hull;
pub(crate) use graham::{lower_scan, upper_scan};
pub use gradation::{build_gradation, gradation_sizes, iterated_log, log_star, Gradation};
pub(crate) use gradation::nested_order;
pub use index::HullIndex;
pub use oblivious::{oblivious_order, oblivious_sizes, ObliviousHullIndex};

/// Below this many lines queries skip the rounds and scan directly.
pub const SMALL_N: usize = 16;

/// Counters filled in by a hull query.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryStats {
    /// Sum over rounds of the number of (point, hull edge) conflicts of the
    /// points added in that round.
    pub total_conflicts: u64,
    /// Zone complexity of the upper plus the lower chain, per refinement round.
    pub zone_complexities: Vec<u64>,
    /// Largest zone complexity of a single hull chain over all rounds.
    pub max_chain_zone: u64,
    pub rounds: u32,
    /// Points sorted per round.
    pub sort_volume: Vec<u64>,
    /// Gift-wrapping steps, for the output-sensitive variant.
    pub wraps: u64,
    /// Wrapping advances made in each output-sensitive round.
    #[serde(default)]
    pub round_wraps: Vec<u64>,
    /// Round at which the output-sensitive variant succeeded (1-based).
    pub successful_round: Option<u32>,
    /// Zone probes that fell back to a global point location.
    pub relocations: u64,
}

impl QueryStats {
    /// Zone complexity of the largest convex chain searched, the quantity
    /// the zone bound for a convex curve speaks about.
    pub fn zone_total(&self) -> u64 {
        self.max_chain_zone
    }

    /// Folds another query's counters into this one.
    pub fn absorb(&mut self, o: &QueryStats) {
        self.total_conflicts += o.total_conflicts;
        self.zone_complexities.extend_from_slice(&o.zone_complexities);
        self.max_chain_zone = self.max_chain_zone.max(o.max_chain_zone);
        self.rounds = self.rounds.max(o.rounds);
        self.sort_volume.extend_from_slice(&o.sort_volume);
        self.wraps += o.wraps;
        self.round_wraps.extend_from_slice(&o.round_wraps);
        self.relocations += o.relocations;
    }
}

/// Checks a one-point-per-line assignment and returns the points indexed by
/// line id.
pub fn assign_points(lines: &[Line], points: &[(Point, u32)]) -> Result<Vec<Point>> {
    let n = lines.len();
    if points.len() != n {
        return Err(GeomError::AssignmentSizeMismatch { expected: n, got: points.len() });
    }
    let mut by_line: Vec<Option<Point>> = vec![None; n];
    for (i, (p, l)) in points.iter().enumerate() {
        let l = *l as usize;
        if l >= n {
            return Err(GeomError::UnknownLine { line: l });
        }
        if by_line[l].is_some() {
            return Err(GeomError::DuplicateLineAssignment { line: l });
        }
        if !lines[l].contains(p) {
            return Err(GeomError::PointNotOnDeclaredLine { index: i });
        }
        by_line[l] = Some(p.clone());
    }
    let pts: Vec<Point> = by_line.into_iter().map(|p| p.expect("every line assigned")).collect();
    check_distinct_x(&pts)?;
    Ok(pts)
}

/// A convex polygon as its clockwise vertex cycle, rotated so that the
/// leftmost vertex comes first. Collinear boundary points are not vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexHull {
    vertices: Vec<Point>,
    right: usize,
}

impl ConvexHull {
    /// Assembles a hull from its upper and lower chains, both listed by
    /// increasing x and sharing their endpoints.
    pub fn from_chains(upper: &[Point], lower: &[Point]) -> Self {
        assert!(!upper.is_empty() && !lower.is_empty());
        debug_assert_eq!(upper.first(), lower.first());
        debug_assert_eq!(upper.last(), lower.last());
        let mut vertices = upper.to_vec();
        let right = vertices.len() - 1;
        if lower.len() > 2 {
            vertices.extend(lower[1..lower.len() - 1].iter().rev().cloned());
        }
        ConvexHull { vertices, right }
    }

    /// Accepts any rotation of a clockwise cycle.
    pub fn from_clockwise(mut vertices: Vec<Point>) -> Self {
        assert!(!vertices.is_empty());
        let l = (0..vertices.len()).min_by(|&a, &b| vertices[a].cmp(&vertices[b])).unwrap();
        vertices.rotate_left(l);
        let right = (0..vertices.len()).max_by(|&a, &b| vertices[a].cmp(&vertices[b])).unwrap();
        ConvexHull { vertices, right }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn leftmost(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn rightmost(&self) -> &Point {
        &self.vertices[self.right]
    }

    /// Upper chain from the leftmost to the rightmost vertex.
    pub fn upper(&self) -> &[Point] {
        &self.vertices[..=self.right]
    }

    /// Lower chain from the leftmost to the rightmost vertex.
    pub fn lower(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.vertices.len() - self.right + 1);
        out.push(self.vertices[0].clone());
        out.extend(self.vertices[self.right..].iter().skip(1).rev().cloned());
        if self.right > 0 {
            out.push(self.vertices[self.right].clone());
        }
        out
    }

    pub fn upper_chain(&self) -> ConvexChain {
        ConvexChain::new(self.upper().to_vec(), ClosedSide::Below).expect("hull chain is convex")
    }

    pub fn lower_chain(&self) -> ConvexChain {
        ConvexChain::new(self.lower(), ClosedSide::Above).expect("hull chain is convex")
    }
}
