use serde::{Deserialize, Serialize};

use super::{Arrangement, VertexKind, XPos, NIL};
use crate::exact::ExactCoord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum XBound {
    NegInf,
    /// The wall through a crossing vertex.
    Vertex(u32),
    PosInf,
}

/// A cell of the vertical decomposition. `top` and `bottom` are half-edges
/// of the owning face; `top` runs right to left and `bottom` left to right,
/// matching the face-on-the-left convention. Frame edges stand for the
/// boundary at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trapezoid {
    pub face: u32,
    pub top: u32,
    pub bottom: u32,
    pub left: XBound,
    pub right: XBound,
}

/// Vertical decomposition of an [`Arrangement`]. The trapezoids of each face
/// are stored contiguously from left to right, so horizontal neighbours are
/// adjacent indices; vertical neighbours are found through the twin of the
/// top or bottom half-edge.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrapezoidalMap {
    traps: Vec<Trapezoid>,
    face_start: Vec<u32>,
}

impl TrapezoidalMap {
    pub fn build(arr: &Arrangement) -> Self {
        let nf = arr.num_face_slots();
        let mut traps = Vec::with_capacity(nf + 2 * arr.num_vertex_slots());
        let mut face_start = Vec::with_capacity(nf + 1);
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for f in 0..nf as u32 {
            face_start.push(traps.len() as u32);
            if f == arr.outer_face() {
                continue;
            }
            chains(arr, f, &mut lower, &mut upper);
            let bound = |v: u32| match arr.kind(v) {
                VertexKind::LeftEnd(_) => XBound::NegInf,
                VertexKind::RightEnd(_) => XBound::PosInf,
                VertexKind::Crossing(..) => XBound::Vertex(v),
            };
            let mut left = bound(arr.origin(lower[0]));
            let (mut i, mut j) = (0, 0);
            while i < lower.len() && j < upper.len() {
                let vi = arr.dest(lower[i]);
                let vj = arr.origin(upper[j]);
                let t = |right| Trapezoid { face: f, top: upper[j], bottom: lower[i], left, right };
                match arr.vertex_x(vi).cmp(&arr.vertex_x(vj)) {
                    std::cmp::Ordering::Less => {
                        traps.push(t(bound(vi)));
                        left = bound(vi);
                        i += 1;
                    }
                    std::cmp::Ordering::Greater => {
                        traps.push(t(bound(vj)));
                        left = bound(vj);
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        traps.push(t(bound(vi)));
                        left = bound(vi);
                        i += 1;
                        j += 1;
                    }
                }
            }
            debug_assert!(i == lower.len() && j == upper.len());
        }
        face_start.push(traps.len() as u32);
        TrapezoidalMap { traps, face_start }
    }

    pub fn len(&self) -> usize {
        self.traps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traps.is_empty()
    }

    pub fn get(&self, t: u32) -> &Trapezoid {
        &self.traps[t as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Trapezoid> {
        self.traps.iter()
    }

    pub fn face_range(&self, f: u32) -> std::ops::Range<u32> {
        self.face_start[f as usize]..self.face_start[f as usize + 1]
    }

    pub fn left_neighbor(&self, t: u32) -> Option<u32> {
        let f = self.traps[t as usize].face;
        (t > self.face_start[f as usize]).then(|| t - 1)
    }

    pub fn right_neighbor(&self, t: u32) -> Option<u32> {
        let f = self.traps[t as usize].face;
        (t + 1 < self.face_start[f as usize + 1]).then_some(t + 1)
    }

    /// The trapezoid of face `f` containing points just right of `x`, clamped
    /// to the face's last trapezoid when `x` lies beyond it.
    pub fn locate_in_face(&self, arr: &Arrangement, f: u32, x: &ExactCoord) -> u32 {
        let r = self.face_range(f);
        let slice = &self.traps[r.start as usize..r.end as usize];
        let k = slice.partition_point(|t| bound_x(arr, t.right).cmp_x(x) != std::cmp::Ordering::Greater);
        r.start + k.min(slice.len() - 1) as u32
    }

    /// Line bounding `t` from above, `NIL` when unbounded.
    pub fn top_line(&self, arr: &Arrangement, t: u32) -> u32 {
        arr.edge_line(self.traps[t as usize].top)
    }

    pub fn bottom_line(&self, arr: &Arrangement, t: u32) -> u32 {
        arr.edge_line(self.traps[t as usize].bottom)
    }
}

pub(crate) fn bound_x(arr: &Arrangement, b: XBound) -> XPos<'_> {
    match b {
        XBound::NegInf => XPos::NegInf,
        XBound::PosInf => XPos::PosInf,
        XBound::Vertex(v) => arr.vertex_x(v),
    }
}

/// Lower chain (left to right) and upper chain (also listed left to right,
/// though each half-edge points leftwards) of a face.
fn chains(arr: &Arrangement, f: u32, lower: &mut Vec<u32>, upper: &mut Vec<u32>) {
    lower.clear();
    upper.clear();
    let cyc: Vec<(u32, i8)> = arr
        .face_cycle(f)
        .map(|h| {
            if arr.edge_line(h) != NIL {
                return (h, if h & 1 == 0 { 1 } else { -1 });
            }
            let dir = match arr.vertex_x(arr.origin(h)).cmp(&arr.vertex_x(arr.dest(h))) {
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Greater => -1,
                std::cmp::Ordering::Equal => 0,
            };
            (h, dir)
        })
        .collect();
    let n = cyc.len();
    for (want, out) in [(1i8, &mut *lower), (-1i8, &mut *upper)] {
        let start = (0..n)
            .find(|&k| cyc[k].1 == want && cyc[(k + n - 1) % n].1 != want)
            .expect("face has both chains");
        let mut k = start;
        while cyc[k].1 == want {
            out.push(cyc[k].0);
            k = (k + 1) % n;
            if k == start {
                break;
            }
        }
    }
    upper.reverse();
    debug_assert!(lower.iter().chain(upper.iter()).all(|&h| h != NIL));
}
