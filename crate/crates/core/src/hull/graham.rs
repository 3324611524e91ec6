use crate::geom::{orientation, Orientation, Point};

use super::ConvexHull;

/// Keeps only strict right turns; `pts` must be sorted by x.
pub(crate) fn upper_scan<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Vec<Point> {
    scan(pts, Orientation::Clockwise)
}

/// Keeps only strict left turns; `pts` must be sorted by x.
pub(crate) fn lower_scan<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Vec<Point> {
    scan(pts, Orientation::CounterClockwise)
}

fn scan<'a>(pts: impl IntoIterator<Item = &'a Point>, keep: Orientation) -> Vec<Point> {
    let mut st: Vec<Point> = Vec::new();
    for q in pts {
        while st.len() >= 2 && orientation(&st[st.len() - 2], &st[st.len() - 1], q) != keep {
            st.pop();
        }
        st.push(q.clone());
    }
    st
}

/// Hull of an arbitrary point set by sorting and two monotone scans.
pub fn graham_hull(points: &[Point]) -> ConvexHull {
    assert!(!points.is_empty(), "hull of an empty set");
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    ConvexHull::from_chains(&upper_scan(&p), &lower_scan(&p))
}
