use crate::exact::ExactCoord;
use crate::geom::{Line, Point};
use crate::hull::ConvexHull;

fn cross(a: &Point, b: &Point, c: &Point) -> ExactCoord {
    let (bx, by) = b.sub(a);
    let (cx, cy) = c.sub(a);
    &(&bx * &cy) - &(&by * &cx)
}

/// A narrowest strip: the line through `edge` and its parallel through
/// `opposite`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub edge: (Point, Point),
    pub opposite: Point,
    pub width2: ExactCoord,
}

impl Strip {
    /// The two boundary lines, unless the strip is vertical.
    pub fn lines(&self) -> Option<(Line, Line)> {
        let (a, b) = &self.edge;
        let l = Line::through(a, b, 0).ok()?;
        let m = Line::with_slope_through(l.slope.clone(), &self.opposite);
        Some((l, m))
    }
}

/// For each edge `i -> i+1`, the first vertex farthest from its line, and
/// whether the vertex after it is equally far (an edge parallel to `i`).
fn antipodes(v: &[Point]) -> Vec<(usize, bool)> {
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    let mut j = 1 % n;
    for i in 0..n {
        let ni = (i + 1) % n;
        if j == i {
            j = ni;
        }
        while cross(&v[i], &v[ni], &v[(j + 1) % n]).abs() > cross(&v[i], &v[ni], &v[j]).abs() {
            j = (j + 1) % n;
        }
        let tie = cross(&v[i], &v[ni], &v[(j + 1) % n]).abs() == cross(&v[i], &v[ni], &v[j]).abs();
        out.push((j, tie));
    }
    out
}

/// A farthest pair of hull vertices.
pub fn diameter(hull: &ConvexHull) -> (Point, Point) {
    let v = hull.vertices();
    let n = v.len();
    if n == 1 {
        return (v[0].clone(), v[0].clone());
    }
    let mut best = (0, 1 % n);
    let mut best_d = v[0].dist2(&v[1 % n]);
    for (i, (j, tie)) in antipodes(v).into_iter().enumerate() {
        let js = if tie { vec![j, (j + 1) % n] } else { vec![j] };
        for a in [i, (i + 1) % n] {
            for &b in &js {
                let d = v[a].dist2(&v[b]);
                if d > best_d {
                    best_d = d;
                    best = (a, b);
                }
            }
        }
    }
    (v[best.0].clone(), v[best.1].clone())
}

/// The narrowest strip containing the hull. Degenerate hulls of one or two
/// vertices have width zero.
pub fn width(hull: &ConvexHull) -> Strip {
    let v = hull.vertices();
    let n = v.len();
    if n <= 2 {
        return Strip { edge: (v[0].clone(), v[1 % n].clone()), opposite: v[0].clone(), width2: ExactCoord::zero() };
    }
    let mut best: Option<Strip> = None;
    for (i, (j, _)) in antipodes(v).into_iter().enumerate() {
        let ni = (i + 1) % n;
        let c = cross(&v[i], &v[ni], &v[j]);
        let w2 = &(&c * &c) / &v[i].dist2(&v[ni]);
        if best.as_ref().is_none_or(|b| w2 < b.width2) {
            best = Some(Strip { edge: (v[i].clone(), v[ni].clone()), opposite: v[j].clone(), width2: w2 });
        }
    }
    best.unwrap()
}
