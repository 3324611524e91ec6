//! Zone of an x-monotone convex polyline, traced through the vertical
//! decomposition.
//!
//! The walk keeps a *probe*: a point on the chain together with the chain's
//! direction there. Whenever the point itself lies on a wall or a line, the
//! direction decides which side the probe belongs to, so every probe sits in
//! exactly one trapezoid. A probe running along an input line counts as lying
//! just above it.
//!
//! Faces are reported under closed semantics: a face belongs to the zone when
//! its closure meets the chain. Chain edge `s` joins vertices `s` and `s + 1`,
//! and a line "crosses" edge `s` when it meets the closed segment.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::trapezoid::bound_x;
use super::{twin, Arrangement, TrapezoidalMap, VertexKind, XPos, NIL};
use crate::error::{GeomError, Result};
use crate::exact::ExactCoord;
use crate::geom::{intersect_lines, orientation, side_of_line, Line, Orientation, Point, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedSide {
    /// The region enclosed by the chain lies above it (a lower hull).
    Above,
    /// The region lies below it (an upper hull).
    Below,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexChain {
    vertices: Vec<Point>,
    closed_side: ClosedSide,
}

impl ConvexChain {
    /// Validates strictly increasing x and a consistent turn direction
    /// (collinear runs are allowed).
    pub fn new(vertices: Vec<Point>, closed_side: ClosedSide) -> Result<Self> {
        if vertices.is_empty() {
            return Err(GeomError::InvalidParameter("empty chain".into()));
        }
        for w in vertices.windows(2) {
            if w[0].x >= w[1].x {
                return Err(GeomError::InvalidParameter("chain is not x-monotone".into()));
            }
        }
        let bad = match closed_side {
            ClosedSide::Below => Orientation::CounterClockwise,
            ClosedSide::Above => Orientation::Clockwise,
        };
        if vertices.windows(3).any(|w| orientation(&w[0], &w[1], &w[2]) == bad) {
            return Err(GeomError::InvalidParameter("chain is not convex".into()));
        }
        Ok(ConvexChain { vertices, closed_side })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn closed_side(&self) -> ClosedSide {
        self.closed_side
    }

    pub fn num_edges(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneReport {
    /// Sorted face ids.
    pub faces: Vec<u32>,
    /// Sorted, deduplicated `(line, chain edge)` incidences.
    pub crossings: Vec<(u32, u32)>,
    /// Sum over zone faces of their line-edge counts.
    pub complexity: u64,
    /// Trapezoids entered during the walk.
    pub steps: u64,
    /// Probes that needed a fresh location from the top face.
    pub relocations: u64,
}

impl ZoneReport {
    /// Chain edges crossed by `line`, ascending.
    pub fn crossings_of(&self, line: u32) -> impl Iterator<Item = u32> + '_ {
        let lo = self.crossings.partition_point(|&(l, _)| l < line);
        self.crossings[lo..].iter().take_while(move |&&(l, _)| l == line).map(|&(_, e)| e)
    }

    pub fn crosses(&self, line: u32) -> bool {
        self.crossings_of(line).next().is_some()
    }
}

/// Per-caller visit stamps so repeated walks need no clearing.
#[derive(Clone, Debug, Default)]
pub struct ZoneScratch {
    stamp: Vec<u32>,
    epoch: u32,
}

impl ZoneScratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn begin(&mut self, nfaces: usize) {
        if self.stamp.len() < nfaces {
            self.stamp.resize(nfaces, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }
}

struct Probe {
    p: Point,
    dx: ExactCoord,
    dy: ExactCoord,
}

impl Probe {
    fn side(&self, l: &Line) -> Side {
        match side_of_line(&self.p, l) {
            Side::On => match ExactCoord::det2_sign(&self.dy, &ExactCoord::one(), &l.slope, &self.dx) {
                Ordering::Less => Side::Below,
                _ => Side::Above,
            },
            s => s,
        }
    }

    /// Probe position against a vertical wall; a tie puts the probe right of it.
    fn right_of(&self, x: XPos<'_>) -> bool {
        x.cmp_x(&self.p.x) != Ordering::Greater
    }
}

struct Walk<'a> {
    arr: &'a Arrangement,
    tmap: &'a TrapezoidalMap,
    scratch: &'a mut ZoneScratch,
    rep: ZoneReport,
}

impl Walk<'_> {
    fn add_face(&mut self, f: u32) {
        if f == self.arr.outer_face() {
            return;
        }
        let s = &mut self.scratch.stamp[f as usize];
        if *s != self.scratch.epoch {
            *s = self.scratch.epoch;
            self.rep.faces.push(f);
            self.rep.complexity += self.arr.face_size(f) as u64;
        }
    }

    fn enter(&mut self, t: u32) {
        self.rep.steps += 1;
        self.add_face(self.tmap.get(t).face);
    }

    fn line(&self, h: u32) -> Option<&Line> {
        let l = self.arr.edge_line(h);
        (l != NIL).then(|| &self.arr.lines()[l as usize])
    }

    fn contains(&self, t: u32, pr: &Probe) -> bool {
        let tr = self.tmap.get(t);
        if !pr.right_of(bound_x(self.arr, tr.left)) || pr.right_of(bound_x(self.arr, tr.right)) {
            return false;
        }
        if let Some(l) = self.line(tr.top) {
            if pr.side(l) != Side::Below {
                return false;
            }
        }
        if let Some(l) = self.line(tr.bottom) {
            if pr.side(l) != Side::Above {
                return false;
            }
        }
        true
    }

    /// Location by descending from the top face along the probe's vertical.
    fn locate(&mut self, pr: &Probe) -> u32 {
        let mut f = self.arr.top_face();
        loop {
            let t = self.tmap.locate_in_face(self.arr, f, &pr.p.x);
            let b = self.tmap.get(t).bottom;
            match self.line(b) {
                Some(l) if pr.side(l) == Side::Below => f = self.arr.face(twin(b)),
                _ => {
                    debug_assert!(self.contains(t, pr));
                    return t;
                }
            }
        }
    }

    /// Finds the trapezoid of a probe that lies on the closure of `t`.
    fn relocate(&mut self, t: u32, pr: &Probe) -> u32 {
        if self.contains(t, pr) {
            return t;
        }
        let tr = *self.tmap.get(t);
        if let Some(r) = self.tmap.right_neighbor(t) {
            if self.contains(r, pr) {
                return r;
            }
        }
        for h in [tr.top, tr.bottom] {
            if self.arr.edge_line(h) == NIL {
                continue;
            }
            let f = self.arr.face(twin(h));
            let c = self.tmap.locate_in_face(self.arr, f, &pr.p.x);
            if self.contains(c, pr) {
                return c;
            }
        }
        self.rep.relocations += 1;
        self.locate(pr)
    }

    /// Records both lines through crossing vertex `v` and every face around it.
    fn through_vertex(&mut self, v: u32, edges: &[u32], t: u32) {
        if let VertexKind::Crossing(a, b) = self.arr.kind(v) {
            for &e in edges {
                self.rep.crossings.push((a, e));
                self.rep.crossings.push((b, e));
            }
        }
        let tr = *self.tmap.get(t);
        let start = [tr.top, tr.bottom, twin(tr.top), twin(tr.bottom)]
            .into_iter()
            .find(|&h| self.arr.origin(h) == v)
            .expect("vertex bounds the trapezoid");
        let mut o = start;
        loop {
            self.add_face(self.arr.face(o));
            o = self.arr.next(twin(o));
            if o == start {
                break;
            }
        }
    }

    /// The chain point `c` lies on the closure of `t`; records the lines of
    /// `t` through it and adds the faces across them.
    fn touch(&mut self, t: u32, c: &Point, edges: &[u32]) {
        let tr = *self.tmap.get(t);
        for h in [tr.top, tr.bottom] {
            let l = self.arr.edge_line(h);
            if l != NIL && self.arr.lines()[l as usize].contains(c) {
                for &e in edges {
                    self.rep.crossings.push((l, e));
                }
                self.add_face(self.arr.face(twin(h)));
            }
        }
    }

    /// A crossing vertex of the top or bottom edge of `t` located at `p`.
    fn vertex_at(&self, t: u32, p: &Point) -> Option<u32> {
        let tr = self.tmap.get(t);
        [tr.top, tr.bottom]
            .into_iter()
            .flat_map(|h| [self.arr.origin(h), self.arr.dest(h)])
            .find(|&v| self.arr.point(v) == Some(p))
    }
}

fn min_opt(a: Option<ExactCoord>, b: Option<ExactCoord>) -> Option<ExactCoord> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

impl Arrangement {
    /// Zone of `chain`, see the module notes for the exact semantics.
    pub fn zone_of_convex_chain(
        &self,
        tmap: &TrapezoidalMap,
        chain: &ConvexChain,
        scratch: &mut ZoneScratch,
    ) -> ZoneReport {
        scratch.begin(self.num_face_slots());
        let mut w = Walk { arr: self, tmap, scratch, rep: ZoneReport::default() };
        let c = chain.vertices();
        let m = c.len();
        let dir = |s: usize| -> (ExactCoord, ExactCoord) {
            if s + 1 < m {
                c[s + 1].sub(&c[s])
            } else {
                (ExactCoord::one(), ExactCoord::zero())
            }
        };
        let (dx, dy) = dir(0);
        let mut pr = Probe { p: c[0].clone(), dx, dy };
        let mut t = w.locate(&pr);
        w.enter(t);
        let first_edge: &[u32] = if m > 1 { &[0] } else { &[] };
        if let Some(v) = w.vertex_at(t, &c[0]) {
            w.through_vertex(v, first_edge, t);
        }
        w.touch(t, &c[0], first_edge);

        for s in 0..m.saturating_sub(1) {
            let seg = Line::through(&c[s], &c[s + 1], 0).expect("x-monotone chain");
            let end = &c[s + 1];
            loop {
                let tr = *tmap.get(t);
                let xr = match bound_x(self, tr.right) {
                    XPos::At(x) => Some(x.clone()),
                    XPos::PosInf => None,
                    XPos::NegInf => unreachable!(),
                };
                let mut xt = None;
                if let Some(tl) = w.line(tr.top) {
                    if side_of_line(end, tl) != Side::Below {
                        xt = intersect_lines(&seg, tl).map(|p| p.x);
                    }
                }
                let mut xb = None;
                if let Some(bl) = w.line(tr.bottom) {
                    if *bl == seg {
                        // riding along the bottom line
                        w.rep.crossings.push((self.edge_line(tr.bottom), s as u32));
                        w.add_face(self.face(twin(tr.bottom)));
                    } else if side_of_line(end, bl) != Side::Above {
                        xb = intersect_lines(&seg, bl).map(|p| p.x);
                    }
                }
                let x_exit = min_opt(min_opt(xr.clone(), xt.clone()), xb.clone());
                let cmp_end = match &x_exit {
                    Some(x) => end.x.cmp(x),
                    None => Ordering::Less,
                };
                if cmp_end != Ordering::Greater {
                    break;
                }
                let x_exit = x_exit.unwrap();
                let p = Point { y: seg.eval(&x_exit), x: x_exit };
                if xt.as_ref() == Some(&p.x) {
                    w.rep.crossings.push((self.edge_line(tr.top), s as u32));
                }
                if xb.as_ref() == Some(&p.x) {
                    w.rep.crossings.push((self.edge_line(tr.bottom), s as u32));
                }
                if let Some(v) = w.vertex_at(t, &p) {
                    w.through_vertex(v, &[s as u32], t);
                }
                pr = Probe { p, dx: pr.dx, dy: pr.dy };
                t = w.relocate(t, &pr);
                w.enter(t);
            }
            // at chain vertex s + 1
            let edges = [s as u32, s as u32 + 1];
            let edges = if s + 2 < m { &edges[..] } else { &edges[..1] };
            if let Some(v) = w.vertex_at(t, end) {
                w.through_vertex(v, edges, t);
            }
            w.touch(t, end, edges);
            if s + 2 < m {
                let (dx, dy) = dir(s + 1);
                pr = Probe { p: end.clone(), dx, dy };
                t = w.relocate(t, &pr);
                w.enter(t);
                w.touch(t, end, edges);
            }
        }
        let mut rep = w.rep;
        rep.faces.sort_unstable();
        rep.crossings.sort_unstable();
        rep.crossings.dedup();
        rep
    }
}
