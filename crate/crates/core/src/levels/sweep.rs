//! Kinetic sweep of a vertical strip `(lo, hi]`. The lines keep their
//! bottom-to-top order; each swap of two neighbours is a vertex whose level
//! is the lower line's position.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{GeomError, Result};
use crate::exact::ExactCoord;
use crate::geom::{intersect_lines, Line, Point};

use super::complex::{LevelComplex, LevelEdge, LevelVertex};

/// One end of a piece: a vertex, a strip wall at `x`, or infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bound {
    pub x: Option<ExactCoord>,
    pub vertex: Option<(u32, u32)>,
}

#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub line: u32,
    pub level: u32,
    pub from: Bound,
    pub to: Bound,
}

#[derive(Debug, Default)]
pub(crate) struct SweepOut {
    pub vertices: Vec<LevelVertex>,
    pub pieces: Vec<Piece>,
    /// Vertices of the `keep`-level inside the strip, left to right.
    pub zeta: Vec<Point>,
    /// Every crossing in the strip with its level, when requested.
    pub all: Vec<(Point, u32)>,
    pub crossings: u64,
    /// Bottom-to-top order just right of `lo` and at `hi`.
    pub order_lo: Vec<u32>,
    pub order_hi: Vec<u32>,
}

fn pair(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// Sweeps `ids` across the strip, keeping vertices and pieces of level at
/// most `keep`. Levels count only the swept lines.
pub(crate) fn sweep_strip(
    lines: &[Line],
    ids: &[u32],
    lo: Option<&ExactCoord>,
    hi: Option<&ExactCoord>,
    keep: u32,
    collect_all: bool,
) -> Result<SweepOut> {
    let line = |i: u32| &lines[i as usize];
    let mut order: Vec<u32> = ids.to_vec();
    match lo {
        None => order.sort_by(|&a, &b| line(b).slope.cmp(&line(a).slope)),
        Some(x) => order.sort_by(|&a, &b| {
            line(a).eval(x).cmp(&line(b).eval(x)).then_with(|| line(a).slope.cmp(&line(b).slope))
        }),
    }
    let mut pos = vec![u32::MAX; lines.len()];
    for (i, &l) in order.iter().enumerate() {
        pos[l as usize] = i as u32;
    }
    let wall = |x: Option<&ExactCoord>| Bound { x: x.cloned(), vertex: None };
    let mut from: Vec<Option<Bound>> = vec![None; lines.len()];
    for &l in &order {
        from[l as usize] = Some(wall(lo));
    }
    let mut out = SweepOut { order_lo: order.clone(), ..Default::default() };
    let mut heap: BinaryHeap<Reverse<(ExactCoord, u32, u32)>> = BinaryHeap::new();
    let schedule = |heap: &mut BinaryHeap<_>, a: u32, b: u32| {
        // a is directly below b; they meet ahead only if a is steeper
        if line(a).slope > line(b).slope {
            let v = intersect_lines(line(a), line(b)).expect("distinct slopes");
            if hi.is_none_or(|h| v.x <= *h) {
                heap.push(Reverse((v.x, a, b)));
            }
        }
    };
    for w in order.windows(2) {
        schedule(&mut heap, w[0], w[1]);
    }
    while let Some(Reverse((x, a, b))) = heap.pop() {
        let i = pos[a as usize];
        if pos[b as usize] != i + 1 {
            continue;
        }
        let v = Point { y: line(a).eval(&x), x };
        for nb in [i.checked_sub(1), Some(i + 2)].into_iter().flatten() {
            if let Some(&c) = order.get(nb as usize) {
                if line(c).contains(&v) {
                    return Err(GeomError::gp(vec![a as usize, b as usize, c as usize], "three lines share a point"));
                }
            }
        }
        out.crossings += 1;
        if collect_all {
            out.all.push((v.clone(), i));
        }
        let vid = pair(a, b);
        let here = Bound { x: Some(v.x.clone()), vertex: Some(vid) };
        for (l, lev) in [(a, i), (b, i + 1)] {
            let start = from[l as usize].replace(here.clone()).expect("swept line");
            if lev <= keep {
                out.pieces.push(Piece { line: l, level: lev, from: start, to: here.clone() });
            }
        }
        if i <= keep {
            out.vertices.push(LevelVertex { point: v.clone(), lines: vid, level: i });
        }
        if i == keep || i + 1 == keep {
            out.zeta.push(v);
        }
        order.swap(i as usize, i as usize + 1);
        pos[a as usize] = i + 1;
        pos[b as usize] = i;
        if i > 0 {
            schedule(&mut heap, order[i as usize - 1], b);
        }
        if let Some(&c) = order.get(i as usize + 2) {
            schedule(&mut heap, a, c);
        }
    }
    for (p, &l) in order.iter().enumerate() {
        if p as u32 <= keep {
            let start = from[l as usize].take().expect("swept line");
            out.pieces.push(Piece { line: l, level: p as u32, from: start, to: wall(hi) });
        }
    }
    out.order_hi = order;
    Ok(out)
}

/// Joins strip outputs: vertices are unified by their line pair and pieces of
/// one line that meet at a shared wall are merged.
pub(crate) fn glue(k: u32, parts: Vec<SweepOut>) -> LevelComplex {
    let mut vertices = Vec::new();
    let mut pieces = Vec::new();
    for p in parts {
        vertices.extend(p.vertices);
        pieces.extend(p.pieces);
    }
    pieces.sort_by(|a, b| {
        a.line.cmp(&b.line).then_with(|| match (&a.from.x, &b.from.x) {
            (None, None) => std::cmp::Ordering::Equal,
            (None, _) => std::cmp::Ordering::Less,
            (_, None) => std::cmp::Ordering::Greater,
            (Some(p), Some(q)) => p.cmp(q),
        })
    });
    let mut edges: Vec<LevelEdge> = Vec::with_capacity(pieces.len());
    let mut open: Option<Piece> = None;
    for pc in pieces {
        if let Some(cur) = open.as_mut() {
            let joins = cur.line == pc.line
                && cur.to.vertex.is_none()
                && pc.from.vertex.is_none()
                && cur.to.x.is_some()
                && cur.to.x == pc.from.x;
            if joins {
                debug_assert_eq!(cur.level, pc.level, "level jumps across a wall");
                cur.to = pc.to;
                continue;
            }
            let done = open.take().unwrap();
            edges.push(finish(done));
        }
        open = Some(pc);
    }
    if let Some(done) = open {
        edges.push(finish(done));
    }
    LevelComplex::from_parts(k, vertices, edges)
}

fn finish(p: Piece) -> LevelEdge {
    debug_assert!(p.from.vertex.is_some() || p.from.x.is_none(), "piece left open at a wall: {p:?}");
    debug_assert!(p.to.vertex.is_some() || p.to.x.is_none(), "piece left open at a wall: {p:?}");
    LevelEdge { line: p.line, left: p.from.vertex, right: p.to.vertex, level: p.level }
}

/// The `(<= k)`-level of all of `lines` by one sweep over the whole plane.
/// Quadratic in the number of lines, since every crossing is an event.
pub fn baseline_level(lines: &[Line], k: u32) -> Result<LevelComplex> {
    crate::geom::sort_by_slope(lines)?;
    let ids: Vec<u32> = (0..lines.len() as u32).collect();
    Ok(glue(k, vec![sweep_strip(lines, &ids, None, None, k, false)?]))
}

/// Same as [`baseline_level`] over the subset `ids` of `lines`.
pub fn baseline_level_of(lines: &[Line], ids: &[u32], k: u32) -> Result<LevelComplex> {
    Ok(glue(k, vec![sweep_strip(lines, ids, None, None, k, false)?]))
}
