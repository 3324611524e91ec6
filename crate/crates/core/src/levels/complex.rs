use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::geom::{Line, Point};

/// A crossing of two lines; `lines` is ordered `(low id, high id)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelVertex {
    pub point: Point,
    pub lines: (u32, u32),
    /// Number of lines strictly below the vertex.
    pub level: u32,
}

/// A maximal piece of one line between consecutive crossings. `None` ends
/// are unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevelEdge {
    pub line: u32,
    pub left: Option<(u32, u32)>,
    pub right: Option<(u32, u32)>,
    /// Number of lines strictly below the interior of the edge.
    pub level: u32,
}

/// The part of an arrangement on or below its `k`-level: every vertex and
/// edge of level at most `k`. Vertices are kept sorted by position and edges
/// by line and then from left to right, so two complexes compare equal
/// exactly when they describe the same cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelComplex {
    k: u32,
    vertices: Vec<LevelVertex>,
    edges: Vec<LevelEdge>,
}

impl LevelComplex {
    /// Canonicalises the order of `vertices` and `edges`; edges of one line
    /// are sorted by the x of their left end.
    pub fn from_parts(k: u32, mut vertices: Vec<LevelVertex>, mut edges: Vec<LevelEdge>) -> Self {
        vertices.sort();
        vertices.dedup();
        let xs: HashMap<(u32, u32), &Point> = vertices.iter().map(|v| (v.lines, &v.point)).collect();
        edges.sort_by(|a, b| {
            a.line.cmp(&b.line).then_with(|| match (a.left, b.left) {
                (None, None) => std::cmp::Ordering::Equal,
                (None, _) => std::cmp::Ordering::Less,
                (_, None) => std::cmp::Ordering::Greater,
                (Some(p), Some(q)) => xs[&p].x.cmp(&xs[&q].x),
            })
        });
        LevelComplex { k, vertices, edges }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertices(&self) -> &[LevelVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LevelEdge] {
        &self.edges
    }

    /// Drops everything above level `k`.
    pub fn truncate(&self, k: u32) -> LevelComplex {
        LevelComplex {
            k: k.min(self.k),
            vertices: self.vertices.iter().filter(|v| v.level <= k).cloned().collect(),
            edges: self.edges.iter().filter(|e| e.level <= k).cloned().collect(),
        }
    }

    /// Edges of the `q`-level from left to right, for `q <= k`.
    pub fn level_chain(&self, q: u32) -> Vec<&LevelEdge> {
        let pos: HashMap<(u32, u32), &Point> = self.vertices.iter().map(|v| (v.lines, &v.point)).collect();
        let mut out: Vec<&LevelEdge> = self.edges.iter().filter(|e| e.level == q).collect();
        out.sort_by(|a, b| match (a.left, b.left) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, _) => std::cmp::Ordering::Less,
            (_, None) => std::cmp::Ordering::Greater,
            (Some(p), Some(r)) => pos[&p].cmp(pos[&r]),
        });
        out
    }

    /// Vertices of the `q`-level in x order: the crossings of level `q` and
    /// `q - 1`.
    pub fn level_vertices(&self, q: u32) -> Vec<&LevelVertex> {
        self.vertices.iter().filter(|v| v.level == q || v.level + 1 == q).collect()
    }

    /// Checks the incidences: every edge end is a listed vertex on that
    /// line, a vertex below level
    /// `k` has four edges and one at level `k` has two, and each level chain
    /// is connected from one unbounded end to the other.
    pub fn validate(&self) -> Result<(), String> {
        let mut degree: HashMap<(u32, u32), u32> = self.vertices.iter().map(|v| (v.lines, 0)).collect();
        for e in &self.edges {
            if e.level > self.k {
                return Err(format!("edge {e:?} above level {}", self.k));
            }
            for end in [e.left, e.right].into_iter().flatten() {
                if end.0 != e.line && end.1 != e.line {
                    return Err(format!("edge {e:?} ends at a vertex off its line"));
                }
                match degree.get_mut(&end) {
                    Some(d) => *d += 1,
                    None => return Err(format!("edge {e:?} ends at an unknown vertex")),
                }
            }
        }
        for v in &self.vertices {
            let want = if v.level < self.k { 4 } else { 2 };
            let got = degree[&v.lines];
            if got != want {
                return Err(format!("vertex {:?} has {got} edges, expected {want}", v.lines));
            }
        }
        for q in 0..=self.k {
            let chain = self.level_chain(q);
            if chain.is_empty() {
                continue;
            }
            if chain[0].left.is_some() || chain[chain.len() - 1].right.is_some() {
                return Err(format!("level {q} chain is not unbounded at both ends"));
            }
            for w in chain.windows(2) {
                if w[0].right.is_none() || w[0].right != w[1].left {
                    return Err(format!("level {q} chain breaks between {:?} and {:?}", w[0], w[1]));
                }
            }
        }
        Ok(())
    }

    /// The `q`-level as a polyline: its vertices, with the slopes of the two
    /// unbounded rays.
    pub fn level_polyline(&self, q: u32, lines: &[Line]) -> Option<Polyline> {
        let chain = self.level_chain(q);
        let first = chain.first()?;
        let last = chain.last()?;
        let pos: HashMap<(u32, u32), &Point> = self.vertices.iter().map(|v| (v.lines, &v.point)).collect();
        Some(Polyline {
            vertices: chain.iter().filter_map(|e| e.right).map(|v| pos[&v].clone()).collect(),
            left_slope: lines[first.line as usize].slope.clone(),
            right_slope: lines[last.line as usize].slope.clone(),
            left_line: first.line,
            right_line: last.line,
        })
    }
}

/// An x-monotone polyline unbounded in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    pub vertices: Vec<Point>,
    pub left_slope: crate::exact::ExactCoord,
    pub right_slope: crate::exact::ExactCoord,
    pub left_line: u32,
    pub right_line: u32,
}
