//! One round of the batched incremental construction: route every fresh
//! point to the slab of the hull edge it sees, then rebuild the chains.

use crate::arrangement::{Arrangement, TrapezoidalMap, ZoneScratch, NIL};
use crate::exact::ExactCoord;
use crate::geom::{orientation, side_of_line, Line, Orientation, Point, Side};

use super::graham::{lower_scan, upper_scan};
use super::{ConvexHull, QueryStats};

/// The arrangement a round searches in, with its lines in slope order.
#[derive(Clone, Copy)]
pub(crate) struct LevelView<'a> {
    pub arr: &'a Arrangement,
    pub tmap: &'a TrapezoidalMap,
    pub by_slope: &'a [u32],
}

/// Fresh points outside the current hull, bucketed by x-slab.
///
/// `upper[j]` holds the points above upper edge `j` whose x lies strictly
/// inside that edge's x-range, `lower[j]` likewise below lower edge `j`.
/// `left` and `right` hold the points beyond the two extreme vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RefinedConflictLists {
    pub left: Vec<Point>,
    pub right: Vec<Point>,
    pub upper: Vec<Vec<Point>>,
    pub lower: Vec<Vec<Point>>,
}

impl RefinedConflictLists {
    pub fn total(&self) -> usize {
        self.left.len()
            + self.right.len()
            + self.upper.iter().map(Vec::len).sum::<usize>()
            + self.lower.iter().map(Vec::len).sum::<usize>()
    }
}

#[derive(Default)]
pub(crate) struct RoundScratch {
    zone: ZoneScratch,
    l2_slot: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Upper(usize),
    Lower(usize),
}

/// The clockwise vertex cycle with `a` upper and `b` lower edges. Cycle
/// edge `e < a` is upper edge `e`; lower edge `j` is cycle edge `a + b - 1 - j`.
struct Cycle<'h> {
    v: &'h [Point],
    a: usize,
    b: usize,
}

impl Cycle<'_> {
    fn len(&self) -> usize {
        self.v.len()
    }

    fn visible(&self, e: usize, p: &Point) -> bool {
        orientation(&self.v[e], &self.v[(e + 1) % self.len()], p) == Orientation::CounterClockwise
    }

    fn lower_edge(&self, j: usize) -> usize {
        self.a + self.b - 1 - j
    }

    fn slot(&self, e: usize, p: &Point) -> Option<Slot> {
        let (s, t) = (&self.v[e], &self.v[(e + 1) % self.len()]);
        if e < self.a {
            (s.x < p.x && p.x < t.x).then_some(Slot::Upper(e))
        } else {
            (t.x < p.x && p.x < s.x).then_some(Slot::Lower(self.a + self.b - 1 - e))
        }
    }

    /// Walks the run of edges visible from `p` around `e0`, returning its
    /// length and the edge among them whose slab holds `p`.
    fn arc(&self, p: &Point, e0: usize) -> (u64, Option<Slot>) {
        debug_assert!(self.visible(e0, p));
        let n = self.len();
        let mut count = 1u64;
        let mut slot = self.slot(e0, p);
        let mut e = (e0 + 1) % n;
        while (count as usize) < n && self.visible(e, p) {
            count += 1;
            slot = slot.or_else(|| self.slot(e, p));
            e = (e + 1) % n;
        }
        let mut e = (e0 + n - 1) % n;
        while (count as usize) < n && self.visible(e, p) {
            count += 1;
            slot = slot.or_else(|| self.slot(e, p));
            e = (e + n - 1) % n;
        }
        (count, slot)
    }

    fn count_from(&self, p: &Point, starts: [usize; 2]) -> u64 {
        starts.into_iter().find(|&e| self.visible(e, p)).map_or(0, |e| self.arc(p, e).0)
    }
}

fn edge_slope(s: &Point, t: &Point) -> ExactCoord {
    (&t.y - &s.y) / (&t.x - &s.x)
}

/// x-coordinates where `line` meets the closed segment `s t`.
fn meet_x(line: &Line, s: &Point, t: &Point, out: &mut Vec<ExactCoord>) {
    let fs = &s.y - &line.eval(&s.x);
    let ft = &t.y - &line.eval(&t.x);
    if fs == ft {
        out.push(s.x.clone());
        out.push(t.x.clone());
    } else {
        let r = &fs / &(&fs - &ft);
        out.push(&s.x + &(&(&t.x - &s.x) * &r));
    }
}

/// Buckets the fresh points `(line id in view, point)` by the slab of the
/// hull edge they lie beyond. Points inside the hull are dropped. Adds the
/// conflict and zone counters of this round to `stats`.
pub(crate) fn refine_round(
    view: LevelView<'_>,
    hull: &ConvexHull,
    fresh: &[(u32, Point)],
    scratch: &mut RoundScratch,
    stats: &mut QueryStats,
) -> RefinedConflictLists {
    let up = hull.upper();
    let lo = hull.lower();
    let cyc = Cycle { v: hull.vertices(), a: up.len() - 1, b: lo.len() - 1 };
    assert!(cyc.a >= 1, "refinement needs a hull with two vertices");
    let (a, b, last) = (cyc.a, cyc.b, cyc.len() - 1);
    let (vl, vr) = (&up[0], &up[a]);

    let zu = view.arr.zone_of_convex_chain(view.tmap, &hull.upper_chain(), &mut scratch.zone);
    let zw = view.arr.zone_of_convex_chain(view.tmap, &hull.lower_chain(), &mut scratch.zone);
    stats.zone_complexities.push(zu.complexity + zw.complexity);
    stats.max_chain_zone = stats.max_chain_zone.max(zu.complexity).max(zw.complexity);
    stats.relocations += zu.relocations + zw.relocations;

    let mut out = RefinedConflictLists { upper: vec![Vec::new(); a], lower: vec![Vec::new(); b], ..Default::default() };
    let mut conflicts = 0u64;
    let place = |p: &Point, e0: usize, out: &mut RefinedConflictLists| -> u64 {
        let (c, slot) = cyc.arc(p, e0);
        match slot.expect("a visible edge's slab contains every outside point") {
            Slot::Upper(j) => out.upper[j].push(p.clone()),
            Slot::Lower(j) => out.lower[j].push(p.clone()),
        }
        c
    };

    scratch.l2_slot.clear();
    scratch.l2_slot.resize(view.arr.num_lines(), NIL);
    let mut hits: Vec<(ExactCoord, usize)> = Vec::new();
    let mut xs: Vec<ExactCoord> = Vec::new();
    for (i, (l, p)) in fresh.iter().enumerate() {
        if p.x < vl.x {
            conflicts += cyc.count_from(p, [0, last]);
            out.left.push(p.clone());
            continue;
        }
        if p.x > vr.x {
            conflicts += cyc.count_from(p, [a - 1, a]);
            out.right.push(p.clone());
            continue;
        }
        let line = &view.arr.lines()[*l as usize];
        hits.clear();
        for j in zu.crossings_of(*l) {
            let j = j as usize;
            xs.clear();
            meet_x(line, &up[j], &up[j + 1], &mut xs);
            hits.extend(xs.drain(..).map(|x| (x, j)));
        }
        for j in zw.crossings_of(*l) {
            let j = j as usize;
            xs.clear();
            meet_x(line, &lo[j], &lo[j + 1], &mut xs);
            let e = cyc.lower_edge(j);
            hits.extend(xs.drain(..).map(|x| (x, e)));
        }
        if hits.is_empty() {
            scratch.l2_slot[*l as usize] = i as u32;
            continue;
        }
        let q1 = hits.iter().map(|h| &h.0).min().unwrap();
        let q2 = hits.iter().map(|h| &h.0).max().unwrap();
        if *q1 <= p.x && p.x <= *q2 {
            continue;
        }
        let q = if p.x < *q1 { q1.clone() } else { q2.clone() };
        let e0 = hits
            .iter()
            .filter(|h| h.0 == q)
            .map(|h| h.1)
            .find(|&e| cyc.visible(e, p))
            .expect("the boundary point nearest an outside point has a visible edge");
        conflicts += place(p, e0, &mut out);
    }

    // Lines missing the hull: find the extreme vertex in each line's slope
    // direction by one merge over slope order.
    let su: Vec<ExactCoord> = up.windows(2).map(|w| edge_slope(&w[0], &w[1])).collect();
    let sw: Vec<ExactCoord> = lo.windows(2).map(|w| edge_slope(&w[0], &w[1])).collect();
    let lines = view.arr.lines();
    let l2 = |l: &u32| scratch.l2_slot[*l as usize] != NIL;
    let mut j = 0;
    for &l in view.by_slope.iter().rev().filter(|l| l2(l)) {
        let line = &lines[l as usize];
        if side_of_line(vl, line) != Side::Below {
            continue;
        }
        while j < a && su[j] > line.slope {
            j += 1;
        }
        let p = &fresh[scratch.l2_slot[l as usize] as usize].1;
        let e = if j < a && p.x > up[j].x { j } else { j - 1 };
        conflicts += place(p, e, &mut out);
    }
    let mut j = 0;
    for &l in view.by_slope.iter().filter(|l| l2(l)) {
        let line = &lines[l as usize];
        if side_of_line(vl, line) != Side::Above {
            continue;
        }
        while j < b && sw[j] < line.slope {
            j += 1;
        }
        let p = &fresh[scratch.l2_slot[l as usize] as usize].1;
        let e = if j < b && p.x > lo[j].x { j } else { j - 1 };
        conflicts += place(p, cyc.lower_edge(e), &mut out);
    }
    stats.total_conflicts += conflicts;
    out
}

/// Sorts every list by x, threads it between the old chain vertices, and
/// scans each chain. Points beyond the extremes are offered to both chains.
pub(crate) fn merge_round(hull: &ConvexHull, mut lists: RefinedConflictLists, stats: &mut QueryStats) -> ConvexHull {
    stats.sort_volume.push(lists.total() as u64);
    lists.left.sort();
    lists.right.sort();
    for v in lists.upper.iter_mut().chain(lists.lower.iter_mut()) {
        v.sort();
    }
    let thread = |chain: &[Point], buckets: &[Vec<Point>]| -> Vec<Point> {
        let mut seq: Vec<&Point> = lists.left.iter().collect();
        for (j, v) in chain.iter().enumerate() {
            seq.push(v);
            if let Some(bk) = buckets.get(j) {
                seq.extend(bk.iter());
            }
        }
        seq.extend(lists.right.iter());
        seq.into_iter().cloned().collect()
    };
    let upper = upper_scan(&thread(hull.upper(), &lists.upper));
    let lower = lower_scan(&thread(&hull.lower(), &lists.lower));
    ConvexHull::from_chains(&upper, &lower)
}
