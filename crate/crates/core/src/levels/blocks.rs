//! Cells under the upper hull of a level, their grouping into blocks, and
//! the conflict lists found from the dual side.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ClosedSide, ConvexChain, TrapezoidalMap, ZoneScratch};
use crate::exact::ExactCoord;
use crate::geom::{dualize_line, intersect_lines, side_of_line, Line, Point, Side};
use crate::hull::upper_scan;

/// Slope of `p -> q` compared with `s`; `q` must lie right of `p`.
fn slope_cmp(p: &Point, q: &Point, s: &ExactCoord) -> std::cmp::Ordering {
    ExactCoord::cmp_affine(&q.y, s, &(&q.x - &p.x), &p.y)
}

/// The upper boundary of a convex region that may be unbounded to either
/// side: a concave vertex chain, continued by a ray of the given slope on
/// every side that has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cap {
    pub vertices: Vec<Point>,
    pub left_slope: Option<ExactCoord>,
    pub right_slope: Option<ExactCoord>,
}

impl Cap {
    /// Upper hull of `pts` (sorted by x) together with the directions of the
    /// optional end rays. `None` when the hull is not bounded from above or
    /// has no vertex.
    pub fn build(pts: &[Point], left_slope: Option<ExactCoord>, right_slope: Option<ExactCoord>) -> Option<Cap> {
        if pts.is_empty() {
            return None;
        }
        if let (Some(l), Some(r)) = (&left_slope, &right_slope) {
            if l <= r {
                return None;
            }
        }
        let h = upper_scan(pts);
        // vertices hidden behind a ray are dropped; edge slopes decrease
        let a = match &left_slope {
            Some(s) => h.windows(2).take_while(|w| slope_cmp(&w[0], &w[1], s).is_ge()).count(),
            None => 0,
        };
        let c = match &right_slope {
            Some(s) => h.windows(2).take_while(|w| slope_cmp(&w[0], &w[1], s).is_gt()).count(),
            None => h.len() - 1,
        };
        Some(Cap { vertices: h[a..=c].to_vec(), left_slope, right_slope })
    }

    /// Height of the cap at `x`, or `None` past an end without a ray.
    pub fn height(&self, x: &ExactCoord) -> Option<ExactCoord> {
        let v = &self.vertices;
        let first = &v[0];
        let last = &v[v.len() - 1];
        if *x < first.x {
            return self.left_slope.as_ref().map(|s| &first.y + &(s * &(x - &first.x)));
        }
        if *x > last.x {
            return self.right_slope.as_ref().map(|s| &last.y + &(s * &(x - &last.x)));
        }
        let j = v.partition_point(|p| p.x < *x);
        if v[j].x == *x {
            return Some(v[j].y.clone());
        }
        let (p, q) = (&v[j - 1], &v[j]);
        Some(&p.y + &(&(&q.y - &p.y) * &(&(x - &p.x) / &(&q.x - &p.x))))
    }

    /// Whether `p` lies on or below the cap.
    pub fn covers(&self, p: &Point) -> bool {
        self.height(&p.x).is_some_and(|h| p.y <= h)
    }

    /// The dual of the cap: the lower envelope of the lines dual to its
    /// vertices over the slope range between the two rays, as a concave
    /// chain. Chain edge `j` lies on the dual of vertex `t - 1 - j`.
    pub fn dual_chain(&self) -> Option<ConvexChain> {
        let (sl, sr) = (self.left_slope.as_ref()?, self.right_slope.as_ref()?);
        let v = &self.vertices;
        let t = v.len();
        let on = |u: &Point, x: &ExactCoord| Point { x: x.clone(), y: &(&u.x * x) - &u.y };
        let mut g = Vec::with_capacity(t + 1);
        g.push(on(&v[t - 1], sr));
        for i in (0..t - 1).rev() {
            let edge = Line::through(&v[i], &v[i + 1], 0).expect("distinct x");
            g.push(dualize_line(&edge));
        }
        g.push(on(&v[0], sl));
        ConvexChain::new(g, ClosedSide::Below).ok()
    }
}

/// Line ids that meet a block, with its statistics.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub cells: Range<usize>,
    pub conflicts: Vec<u32>,
    /// Conflicting lines that cross both walls.
    pub spanning: u32,
}

/// The cells below a cap, cut by vertical walls through its vertices, and
/// their grouping into blocks of `cells_per_block` consecutive cells.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub cap: Cap,
    pub cells_per_block: usize,
    /// `c_Δ` for every cell, left to right.
    pub cell_conflicts: Vec<u64>,
    pub blocks: Vec<Block>,
    pub zone_complexity: u64,
    pub relocations: u64,
}

impl BlockDecomposition {
    pub fn cell_count(&self) -> usize {
        self.cap.vertices.len() + 1
    }

    /// The x-range `(left wall, right wall]` of a run of cells.
    pub fn walls(&self, cells: &Range<usize>) -> (Option<&ExactCoord>, Option<&ExactCoord>) {
        let v = &self.cap.vertices;
        let lo = cells.start.checked_sub(1).map(|i| &v[i].x);
        let hi = v.get(cells.end - 1).map(|p| &p.x);
        (lo, hi)
    }
}

/// The dual arrangement a query walks in, with the map from line ids to the
/// arrangement's own ids.
pub(crate) struct DualView<'a> {
    pub arr: &'a Arrangement,
    pub tmap: &'a TrapezoidalMap,
    /// Arrangement id of each point id, or `u32::MAX` when absent.
    pub local: Vec<u32>,
}

/// Whether `l` passes on or below cap vertex `u`.
fn under(l: &Line, u: &Point) -> bool {
    side_of_line(u, l) != Side::Below
}

/// For one line, the range of cells it meets, located from the dual side:
/// the line's dual point lies on dual line `a`, and where that point sits
/// against the chain tells whether and where the line dips below the cap.
fn locate(
    cap: &Cap,
    gamma: &ConvexChain,
    crossings: &mut dyn Iterator<Item = u32>,
    dual_line: &Line,
    l: &Line,
) -> Option<usize> {
    let t = cap.vertices.len();
    let q = dualize_line(l);
    let (sl, sr) = (cap.left_slope.as_ref().unwrap(), cap.right_slope.as_ref().unwrap());
    if q.x >= *sl {
        return Some(0);
    }
    if q.x <= *sr {
        return Some(t);
    }
    let g = gamma.vertices();
    let edge_line = |e: usize| {
        let u = &cap.vertices[t - 1 - e];
        Line { slope: u.x.clone(), intercept: -&u.y }
    };
    let by_search = || {
        let e = g[1..t].partition_point(|p| p.x < q.x);
        (side_of_line(&q, &edge_line(e)) != Side::Below).then_some(t - 1 - e)
    };
    // crossings of the dual line with chain edges, by x
    let mut meets: Vec<(ExactCoord, u32)> = Vec::new();
    for e in crossings {
        match intersect_lines(dual_line, &edge_line(e as usize)) {
            Some(p) => meets.push((p.x, e)),
            None => return by_search(),
        }
    }
    if meets.is_empty() {
        return if side_of_line(&g[0], dual_line) == Side::Above { None } else { by_search() };
    }
    meets.sort();
    let (x1, e1lo) = meets[0].clone();
    let e1hi = meets.iter().take_while(|m| m.0 == x1).last().unwrap().1;
    let (x2, e2hi) = meets[meets.len() - 1].clone();
    let right_of_x1 = edge_line(e1hi as usize).slope;
    let (lo, hi) = match dual_line.slope.cmp(&right_of_x1) {
        std::cmp::Ordering::Less if x2 > x1 => (x1.clone(), x2.clone()),
        std::cmp::Ordering::Less => (x1.clone(), sl.clone()),
        std::cmp::Ordering::Greater => (sr.clone(), x1.clone()),
        std::cmp::Ordering::Equal => return by_search(),
    };
    if lo < q.x && q.x < hi {
        return None;
    }
    let e = if q.x <= lo {
        if lo == x1 {
            e1lo
        } else {
            return by_search();
        }
    } else if hi == x1 {
        e1hi
    } else if hi == x2 {
        e2hi
    } else {
        return by_search();
    };
    Some(t - 1 - e as usize)
}

/// Finds `C_Δ` and `C_B` for the lines `ids` against the cap, walking the
/// dual chain's zone in `view` and then each line's cells outwards.
pub(crate) fn decompose(
    cap: Cap,
    lines: &[Line],
    ids: &[u32],
    cells_per_block: usize,
    view: &DualView<'_>,
) -> BlockDecomposition {
    let t = cap.vertices.len();
    let gamma = cap.dual_chain().expect("bounded cap");
    let mut scratch = ZoneScratch::new();
    let zone = view.arr.zone_of_convex_chain(view.tmap, &gamma, &mut scratch);
    let mut diff = vec![0i64; t + 2];
    let nblocks = (t + 1).div_ceil(cells_per_block);
    let mut blocks: Vec<Block> = (0..nblocks)
        .map(|b| Block { cells: b * cells_per_block..((b + 1) * cells_per_block).min(t + 1), ..Default::default() })
        .collect();
    let (sl, sr) = (cap.left_slope.clone().unwrap(), cap.right_slope.clone().unwrap());
    for &id in ids {
        let l = &lines[id as usize];
        let a = view.local[id as usize];
        let start = locate(&cap, &gamma, &mut zone.crossings_of(a), &view.arr.lines()[a as usize], l);
        let Some(start) = start else { continue };
        let (mut lo, mut hi) = (start, start);
        // a start vertex means both neighbouring cells are met
        while lo > 0 && under(l, &cap.vertices[lo - 1]) {
            lo -= 1;
        }
        while hi < t && under(l, &cap.vertices[hi]) {
            hi += 1;
        }
        diff[lo] += 1;
        diff[hi + 1] -= 1;
        let (blo, bhi) = (lo / cells_per_block, hi / cells_per_block);
        let mut nonspanning = 0;
        for block in &mut blocks[blo..=bhi] {
            let cells = &block.cells;
            let left = lo < cells.start || (cells.start == 0 && l.slope >= sl);
            let right = hi >= cells.end || (cells.end == t + 1 && l.slope <= sr);
            block.conflicts.push(id);
            if left && right {
                block.spanning += 1;
            } else {
                nonspanning += 1;
            }
        }
        assert!(nonspanning <= 2, "line {id} fails to span {nonspanning} blocks");
    }
    let mut acc = 0i64;
    let cell_conflicts = (0..=t)
        .map(|c| {
            acc += diff[c];
            acc as u64
        })
        .collect();
    BlockDecomposition {
        cap,
        cells_per_block,
        cell_conflicts,
        blocks,
        zone_complexity: zone.complexity,
        relocations: zone.relocations,
    }
}
