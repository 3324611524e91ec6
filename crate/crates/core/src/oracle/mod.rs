//! Brute-force references. Nothing here calls into the main algorithms;
//! only the exact predicates of [`crate::geom`] are shared.

use std::collections::BTreeMap;

use crate::arrangement::{Arrangement, ConvexChain, ZoneReport, NIL};
use crate::exact::ExactCoord;
use crate::geom::{intersect_lines, orientation, side_of_line, Line, Orientation, Point, Side};
use crate::hull::ConvexHull;
use crate::levels::{LevelComplex, LevelEdge, LevelVertex};

/// Sort by x, then a monotone-chain scan.
pub fn brute_hull(points: &[Point]) -> ConvexHull {
    assert!(!points.is_empty());
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() == 1 {
        return ConvexHull::from_chains(&p, &p);
    }
    let chain = |turn_ok: Orientation| {
        let mut st: Vec<Point> = Vec::new();
        for q in &p {
            while st.len() >= 2 && orientation(&st[st.len() - 2], &st[st.len() - 1], q) != turn_ok {
                st.pop();
            }
            st.push(q.clone());
        }
        st
    };
    let upper = chain(Orientation::Clockwise);
    let lower = chain(Orientation::CounterClockwise);
    ConvexHull::from_chains(&upper, &lower)
}

/// Hull vertices by testing every ordered pair as a candidate clockwise edge.
/// Cubic; used only to cross-check [`brute_hull`].
pub fn all_edges_hull(points: &[Point]) -> ConvexHull {
    let n = points.len();
    if n == 1 {
        return ConvexHull::from_clockwise(points.to_vec());
    }
    let between = |a: &Point, b: &Point, r: &Point| {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        lo < r && r < hi
    };
    let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ok = (0..n).filter(|&r| r != i && r != j).all(|r| {
                match orientation(&points[i], &points[j], &points[r]) {
                    Orientation::Clockwise => true,
                    Orientation::Collinear => between(&points[i], &points[j], &points[r]),
                    Orientation::CounterClockwise => false,
                }
            });
            if ok {
                succ.insert(i, j);
            }
        }
    }
    let start = *succ.keys().next().expect("at least one hull edge");
    let mut cyc = vec![points[start].clone()];
    let mut cur = succ[&start];
    while cur != start {
        cyc.push(points[cur].clone());
        cur = succ[&cur];
    }
    ConvexHull::from_clockwise(cyc)
}

/// For each clockwise hull edge `v_i -> v_{i+1}`, the indices of points lying
/// strictly left of its supporting line.
pub fn brute_conflicts(hull: &ConvexHull, points: &[Point]) -> Vec<Vec<usize>> {
    let v = hull.vertices();
    if v.len() < 2 {
        return Vec::new();
    }
    (0..v.len())
        .map(|i| {
            let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
            (0..points.len())
                .filter(|&j| orientation(a, b, &points[j]) == Orientation::CounterClockwise)
                .collect()
        })
        .collect()
}

/// Clips the closed segment `a b` (a single point when equal) against the
/// closed half-plane on side `keep` of `l`. Returns the surviving parameter
/// interval of `t` in `[0, 1]`.
fn clip(
    a: &Point,
    b: &Point,
    l: &Line,
    keep: Side,
    lo: ExactCoord,
    hi: ExactCoord,
) -> Option<(ExactCoord, ExactCoord)> {
    // g(t) = s * (y - l(x)) along the segment, must be >= 0
    let s = if keep == Side::Above { ExactCoord::one() } else { -ExactCoord::one() };
    let g0 = &s * &(&a.y - &l.eval(&a.x));
    let g1 = &s * &(&b.y - &l.eval(&b.x));
    let dg = &g1 - &g0;
    if dg.is_zero() {
        return (g0.signum() >= 0).then_some((lo, hi));
    }
    let t0 = -(&g0 / &dg);
    let (lo, hi) = if dg.signum() > 0 { (lo.max(t0), hi) } else { (lo, hi.min(t0)) };
    (lo <= hi).then_some((lo, hi))
}

/// Zone by testing every face's closure against every chain edge.
pub fn brute_zone(arr: &Arrangement, chain: &ConvexChain) -> ZoneReport {
    let c = chain.vertices();
    let segs: Vec<(&Point, &Point)> =
        if c.len() == 1 { vec![(&c[0], &c[0])] } else { c.windows(2).map(|w| (&w[0], &w[1])).collect() };
    let mut rep = ZoneReport::default();
    for f in 0..arr.num_face_slots() as u32 {
        if f == arr.outer_face() {
            continue;
        }
        let planes: Vec<(u32, Side)> = arr
            .face_cycle(f)
            .filter(|&h| arr.edge_line(h) != NIL)
            .map(|h| (arr.edge_line(h), if arr.goes_right(h) { Side::Above } else { Side::Below }))
            .collect();
        let meets = segs.iter().any(|&(a, b)| {
            let mut iv = Some((ExactCoord::zero(), ExactCoord::one()));
            for &(l, keep) in &planes {
                iv = iv.and_then(|(lo, hi)| clip(a, b, &arr.lines()[l as usize], keep, lo, hi));
            }
            iv.is_some()
        });
        if meets {
            rep.faces.push(f);
            rep.complexity += planes.len() as u64;
        }
    }
    for (li, l) in arr.lines().iter().enumerate() {
        for (e, w) in c.windows(2).enumerate() {
            let (s0, s1) = (side_of_line(&w[0], l), side_of_line(&w[1], l));
            if s0 == Side::On || s1 == Side::On || s0 != s1 {
                rep.crossings.push((li as u32, e as u32));
            }
        }
    }
    rep
}

/// An arrangement rebuilt from pairwise intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteArrangement {
    /// Per line, the other line of each crossing, left to right.
    pub line_vertices: Vec<Vec<u32>>,
    /// Faces as sorted lists of `(line, edge index along that line)`.
    pub faces: Vec<Vec<(u32, u32)>>,
}

impl BruteArrangement {
    pub fn vertex_count(&self) -> usize {
        self.line_vertices.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edge_count(&self) -> usize {
        self.line_vertices.iter().map(|v| v.len() + 1).sum()
    }
}

/// Rebuilds the arrangement by intersecting all pairs and identifying each
/// face by the above/below pattern of a point just off one of its edges.
pub fn brute_arrangement(lines: &[Line]) -> BruteArrangement {
    let n = lines.len();
    let mut line_vertices = Vec::with_capacity(n);
    let mut xs_per_line = Vec::with_capacity(n);
    for i in 0..n {
        let mut xs: Vec<(ExactCoord, u32)> = (0..n)
            .filter(|&j| j != i)
            .filter_map(|j| intersect_lines(&lines[i], &lines[j]).map(|p| (p.x, j as u32)))
            .collect();
        xs.sort();
        line_vertices.push(xs.iter().map(|&(_, j)| j).collect());
        xs_per_line.push(xs.into_iter().map(|(x, _)| x).collect::<Vec<_>>());
    }
    let mut faces: BTreeMap<Vec<bool>, Vec<(u32, u32)>> = BTreeMap::new();
    for i in 0..n {
        let xs = &xs_per_line[i];
        for e in 0..=xs.len() {
            let x = match (e.checked_sub(1).map(|k| &xs[k]), xs.get(e)) {
                (None, None) => ExactCoord::zero(),
                (None, Some(r)) => r - &ExactCoord::one(),
                (Some(l), None) => l + &ExactCoord::one(),
                (Some(l), Some(r)) => &(l + r) / &ExactCoord::from_int(2),
            };
            let p = Point { y: lines[i].eval(&x), x };
            let base: Vec<bool> =
                (0..n).map(|j| j != i && side_of_line(&p, &lines[j]) == Side::Above).collect();
            for above in [true, false] {
                let mut key = base.clone();
                key[i] = above;
                faces.entry(key).or_default().push((i as u32, e as u32));
            }
        }
    }
    let mut faces: Vec<Vec<(u32, u32)>> = faces.into_values().collect();
    for f in &mut faces {
        f.sort();
    }
    faces.sort();
    BruteArrangement { line_vertices, faces }
}

/// The same description extracted from a DCEL, for comparison.
pub fn describe_arrangement(arr: &Arrangement) -> BruteArrangement {
    let n = arr.num_lines();
    let mut line_vertices = Vec::with_capacity(n);
    let mut edge_index = vec![(NIL, NIL); arr.num_half_edges()];
    for l in 0..n as u32 {
        let mut others = Vec::new();
        for (k, h) in arr.line_edges(l).enumerate() {
            edge_index[h as usize] = (l, k as u32);
            edge_index[(h ^ 1) as usize] = (l, k as u32);
        }
        for v in arr.line_vertices(l) {
            if let crate::arrangement::VertexKind::Crossing(a, b) = arr.kind(v) {
                others.push(if a == l { b } else { a });
            }
        }
        line_vertices.push(others);
    }
    let mut faces: Vec<Vec<(u32, u32)>> = (0..arr.num_face_slots() as u32)
        .filter(|&f| f != arr.outer_face())
        .map(|f| {
            let mut v: Vec<(u32, u32)> =
                arr.face_cycle(f).filter(|&h| arr.edge_line(h) != NIL).map(|h| edge_index[h as usize]).collect();
            v.sort();
            v
        })
        .collect();
    faces.sort();
    BruteArrangement { line_vertices, faces }
}

/// Largest squared distance over all pairs.
pub fn brute_diameter2(points: &[Point]) -> ExactCoord {
    let mut best = ExactCoord::zero();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = a.dist2(b);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Squared width: over every direction spanned by two of the points, the
/// squared extent of the set across that direction, minimised.
pub fn brute_width2(points: &[Point]) -> ExactCoord {
    let mut best: Option<ExactCoord> = None;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let (dx, dy) = b.sub(a);
            let across = |p: &Point| {
                let (px, py) = p.sub(a);
                &(&dx * &py) - &(&dy * &px)
            };
            let lo = points.iter().map(across).min().unwrap();
            let hi = points.iter().map(across).max().unwrap();
            let span = &hi - &lo;
            let w2 = &(&span * &span) / &(&(&dx * &dx) + &(&dy * &dy));
            if best.as_ref().is_none_or(|b| w2 < *b) {
                best = Some(w2);
            }
        }
    }
    best.unwrap_or_else(ExactCoord::zero)
}

/// The `(<= k)`-level by counting, for every crossing and for a sample point
/// inside every edge, the lines strictly below it. Cubic.
pub fn brute_levels(lines: &[Line], k: u32) -> LevelComplex {
    let n = lines.len();
    let below = |p: &Point| lines.iter().filter(|l| side_of_line(p, l) == Side::Above).count() as u32;
    let mut on_line: Vec<Vec<(Point, (u32, u32))>> = vec![Vec::new(); n];
    let mut vertices = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = intersect_lines(&lines[i], &lines[j]).expect("distinct slopes");
            let id = (i as u32, j as u32);
            on_line[i].push((p.clone(), id));
            on_line[j].push((p.clone(), id));
            let level = below(&p);
            if level <= k {
                vertices.push(LevelVertex { point: p, lines: id, level });
            }
        }
    }
    let mut edges = Vec::new();
    for (l, mut pts) in on_line.into_iter().enumerate() {
        pts.sort();
        let line = &lines[l];
        let at = |x: ExactCoord| Point { y: line.eval(&x), x };
        let one = ExactCoord::one();
        let mut ends: Vec<Option<&(Point, (u32, u32))>> = vec![None];
        ends.extend(pts.iter().map(Some));
        ends.push(None);
        for w in ends.windows(2) {
            let sample = match (w[0], w[1]) {
                (None, None) => at(ExactCoord::zero()),
                (None, Some(r)) => at(&r.0.x - &one),
                (Some(l), None) => at(&l.0.x + &one),
                (Some(l), Some(r)) => at(&(&l.0.x + &r.0.x) / &ExactCoord::from_int(2)),
            };
            let level = below(&sample);
            if level <= k {
                edges.push(LevelEdge { line: l as u32, left: w[0].map(|v| v.1), right: w[1].map(|v| v.1), level });
            }
        }
    }
    LevelComplex::from_parts(k, vertices, edges)
}
