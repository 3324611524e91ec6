//! Line arrangements stored as a doubly connected edge list.
//!
//! Unbounded edges end at symbolic vertices "at infinity" on a frame. A frame
//! vertex is the left or right end of one line; the frame cycle orders them
//! counter-clockwise as right ends by ascending slope followed by left ends by
//! ascending slope. Frame vertices never need coordinates: comparing a line's
//! end against another line reduces to comparing slopes.
//!
//! Half-edges come in twin pairs `(2i, 2i + 1)`. Every half-edge has its face
//! on the left, so bounded faces are traversed counter-clockwise.

mod trapezoid;
mod zone;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::exact::ExactCoord;
use crate::geom::{intersect_lines, side_of_line, sort_by_slope, Line, Point, Side};

pub use trapezoid::{Trapezoid, TrapezoidalMap, XBound};
pub use zone::{ClosedSide, ConvexChain, ZoneReport, ZoneScratch};

pub const NIL: u32 = u32::MAX;

#[inline]
pub fn twin(h: u32) -> u32 {
    h ^ 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    /// Intersection of two lines, stored with the smaller id first.
    Crossing(u32, u32),
    LeftEnd(u32),
    RightEnd(u32),
}

/// Horizontal position of a vertex, with frame vertices at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XPos<'a> {
    NegInf,
    At(&'a ExactCoord),
    PosInf,
}

impl XPos<'_> {
    pub fn cmp_x(&self, x: &ExactCoord) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self {
            XPos::NegInf => Less,
            XPos::PosInf => Greater,
            XPos::At(v) => (*v).cmp(x),
        }
    }
}

impl PartialOrd for XPos<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XPos<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (XPos::At(a), XPos::At(b)) => a.cmp(b),
            (XPos::NegInf, XPos::NegInf) | (XPos::PosInf, XPos::PosInf) => Equal,
            (XPos::NegInf, _) | (_, XPos::PosInf) => Less,
            _ => Greater,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Arrangement {
    lines: Vec<Line>,
    kinds: Vec<VertexKind>,
    points: Vec<Option<Point>>,
    origin: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    face: Vec<u32>,
    /// Supporting line of each half-edge, `NIL` on the frame.
    line: Vec<u32>,
    face_edge: Vec<u32>,
    outer_face: u32,
    top_face: u32,
    bottom_face: u32,
    left_end: Vec<u32>,
    right_end: Vec<u32>,
    /// Half-edge leaving each line's left end, pointing right.
    first_edge: Vec<u32>,
    /// Half-edge at the top of the frame, seen from inside.
    top_wrap: u32,
}

struct Builder {
    arr: Arrangement,
    /// Inner frame half-edge leaving each frame vertex in ccw order, by vertex id.
    frame_out: Vec<u32>,
    by_slope: BTreeMap<ExactCoord, u32>,
}

impl Arrangement {
    /// Builds the arrangement by inserting the lines one at a time, walking
    /// each new line through the faces it crosses.
    pub fn build(lines: &[Line]) -> Result<Self> {
        if lines.is_empty() {
            return Err(GeomError::InvalidParameter("arrangement needs at least one line".into()));
        }
        sort_by_slope(lines)?;
        let n = lines.len();
        let mut b = Builder {
            arr: Arrangement {
                lines: lines.to_vec(),
                kinds: Vec::with_capacity(n * (n + 3) / 2),
                points: Vec::with_capacity(n * (n + 3) / 2),
                origin: Vec::new(),
                next: Vec::new(),
                prev: Vec::new(),
                face: Vec::new(),
                line: Vec::new(),
                face_edge: Vec::new(),
                outer_face: 2,
                top_face: 0,
                bottom_face: 1,
                left_end: vec![NIL; n],
                right_end: vec![NIL; n],
                first_edge: vec![NIL; n],
                top_wrap: NIL,
            },
            frame_out: Vec::new(),
            by_slope: BTreeMap::new(),
        };
        let he_cap = 2 * (n * n + 2 * n);
        for v in [&mut b.arr.origin, &mut b.arr.next, &mut b.arr.prev, &mut b.arr.face, &mut b.arr.line] {
            v.reserve_exact(he_cap);
        }
        b.init_first();
        for i in 1..n as u32 {
            b.insert(i)?;
        }
        let mut arr = b.arr;
        // The top wrap leaves the right end of the steepest line.
        let steepest = *b.by_slope.values().next_back().unwrap();
        arr.top_wrap = b.frame_out[arr.right_end[steepest as usize] as usize];
        arr.top_face = arr.face[arr.top_wrap as usize];
        let shallowest = *b.by_slope.values().next().unwrap();
        let bottom_wrap = b.frame_out[arr.left_end[steepest as usize] as usize];
        debug_assert_eq!(arr.dest(bottom_wrap), arr.right_end[shallowest as usize]);
        arr.bottom_face = arr.face[bottom_wrap as usize];
        Ok(arr)
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Crossing vertices only; frame vertices are not counted.
    pub fn vertex_count(&self) -> usize {
        self.kinds.iter().filter(|k| matches!(k, VertexKind::Crossing(..))).count()
    }

    /// Edges lying on input lines.
    pub fn edge_count(&self) -> usize {
        self.line.iter().filter(|&&l| l != NIL).count() / 2
    }

    /// Faces of the arrangement, excluding the region outside the frame.
    pub fn face_count(&self) -> usize {
        self.face_edge.len() - 1
    }

    pub fn num_vertex_slots(&self) -> usize {
        self.kinds.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.origin.len()
    }

    pub fn num_face_slots(&self) -> usize {
        self.face_edge.len()
    }

    pub fn outer_face(&self) -> u32 {
        self.outer_face
    }

    /// The unbounded face above every vertex.
    pub fn top_face(&self) -> u32 {
        self.top_face
    }

    pub fn bottom_face(&self) -> u32 {
        self.bottom_face
    }

    pub fn top_wrap(&self) -> u32 {
        self.top_wrap
    }

    pub fn kind(&self, v: u32) -> VertexKind {
        self.kinds[v as usize]
    }

    /// Coordinates of a crossing vertex; `None` for frame vertices.
    pub fn point(&self, v: u32) -> Option<&Point> {
        self.points[v as usize].as_ref()
    }

    pub fn vertex_x(&self, v: u32) -> XPos<'_> {
        match self.kinds[v as usize] {
            VertexKind::LeftEnd(_) => XPos::NegInf,
            VertexKind::RightEnd(_) => XPos::PosInf,
            VertexKind::Crossing(..) => XPos::At(&self.points[v as usize].as_ref().unwrap().x),
        }
    }

    pub fn origin(&self, h: u32) -> u32 {
        self.origin[h as usize]
    }

    pub fn dest(&self, h: u32) -> u32 {
        self.origin[twin(h) as usize]
    }

    pub fn next(&self, h: u32) -> u32 {
        self.next[h as usize]
    }

    pub fn prev(&self, h: u32) -> u32 {
        self.prev[h as usize]
    }

    pub fn face(&self, h: u32) -> u32 {
        self.face[h as usize]
    }

    /// Supporting line of a half-edge, or `NIL` for frame edges.
    pub fn edge_line(&self, h: u32) -> u32 {
        self.line[h as usize]
    }

    pub fn face_edge(&self, f: u32) -> u32 {
        self.face_edge[f as usize]
    }

    pub fn left_end(&self, l: u32) -> u32 {
        self.left_end[l as usize]
    }

    pub fn right_end(&self, l: u32) -> u32 {
        self.right_end[l as usize]
    }

    /// Half-edges around a face starting at its boundary cursor.
    pub fn face_cycle(&self, f: u32) -> FaceCycle<'_> {
        let start = self.face_edge[f as usize];
        FaceCycle { arr: self, start, cur: start, done: false }
    }

    /// Number of line edges on the boundary of `f`.
    pub fn face_size(&self, f: u32) -> usize {
        self.face_cycle(f).filter(|&h| self.line[h as usize] != NIL).count()
    }

    /// Half-edges along line `l` from left to right.
    pub fn line_edges(&self, l: u32) -> LineEdges<'_> {
        LineEdges { arr: self, cur: self.first_edge[l as usize] }
    }

    /// Crossing vertices along line `l` from left to right.
    pub fn line_vertices(&self, l: u32) -> impl Iterator<Item = u32> + '_ {
        self.line_edges(l).map(|h| self.dest(h)).filter(|&v| matches!(self.kinds[v as usize], VertexKind::Crossing(..)))
    }

    /// True when `h` runs along its line from left to right.
    pub fn goes_right(&self, h: u32) -> bool {
        if self.line[h as usize] != NIL {
            return h & 1 == 0;
        }
        self.vertex_x(self.origin(h)) < self.vertex_x(self.dest(h))
    }

    /// Side of the vertex relative to line `l` (not through it unless on it).
    pub fn vertex_side(&self, v: u32, l: &Line) -> Side {
        vertex_side(&self.kinds, &self.points, &self.lines, v, l)
    }

    /// Structural self-check used by tests: twin/next/prev consistency,
    /// face labels, and the Euler relation on the framed graph.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let nh = self.origin.len();
        for h in 0..nh as u32 {
            let n = self.next(h);
            if self.prev(n) != h {
                return Err(format!("prev(next({h})) != {h}"));
            }
            if self.origin(n) != self.dest(h) {
                return Err(format!("next of {h} does not start at its head"));
            }
            if self.face(n) != self.face(h) {
                return Err(format!("face label breaks along cycle at {h}"));
            }
            if self.line[h as usize] != self.line[twin(h) as usize] {
                return Err(format!("twin {h} has a different line"));
            }
            if self.line[h as usize] != NIL
                && (self.vertex_x(self.origin(h)) < self.vertex_x(self.dest(h))) != (h & 1 == 0)
            {
                return Err(format!("half-edge {h} has the wrong parity for its direction"));
            }
        }
        let mut seen = vec![false; nh];
        for f in 0..self.face_edge.len() as u32 {
            for h in self.face_cycle(f) {
                if seen[h as usize] {
                    return Err(format!("half-edge {h} in two cycles"));
                }
                seen[h as usize] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err("half-edge outside every cycle".into());
        }
        let v = self.kinds.len() as i64;
        let e = (nh / 2) as i64;
        let f = self.face_edge.len() as i64;
        if v - e + f != 2 {
            return Err(format!("Euler fails: {v} - {e} + {f} != 2"));
        }
        Ok(())
    }
}

fn vertex_side(kinds: &[VertexKind], points: &[Option<Point>], lines: &[Line], v: u32, l: &Line) -> Side {
    match kinds[v as usize] {
        VertexKind::LeftEnd(m) => match lines[m as usize].slope.cmp(&l.slope) {
            std::cmp::Ordering::Less => Side::Above,
            std::cmp::Ordering::Greater => Side::Below,
            std::cmp::Ordering::Equal => Side::On,
        },
        VertexKind::RightEnd(m) => match lines[m as usize].slope.cmp(&l.slope) {
            std::cmp::Ordering::Greater => Side::Above,
            std::cmp::Ordering::Less => Side::Below,
            std::cmp::Ordering::Equal => Side::On,
        },
        VertexKind::Crossing(..) => side_of_line(points[v as usize].as_ref().unwrap(), l),
    }
}

pub struct FaceCycle<'a> {
    arr: &'a Arrangement,
    start: u32,
    cur: u32,
    done: bool,
}

impl Iterator for FaceCycle<'_> {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        let h = self.cur;
        self.cur = self.arr.next(h);
        if self.cur == self.start {
            self.done = true;
        }
        Some(h)
    }
}

pub struct LineEdges<'a> {
    arr: &'a Arrangement,
    cur: u32,
}

impl Iterator for LineEdges<'_> {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.cur == NIL {
            return None;
        }
        let h = self.cur;
        let d = self.arr.dest(h);
        self.cur = match self.arr.kinds[d as usize] {
            VertexKind::RightEnd(_) => NIL,
            _ => self.arr.next(twin(self.arr.next(h))),
        };
        Some(h)
    }
}

impl Builder {
    fn new_vertex(&mut self, k: VertexKind, p: Option<Point>) -> u32 {
        let id = self.arr.kinds.len() as u32;
        self.arr.kinds.push(k);
        self.arr.points.push(p);
        self.frame_out.push(NIL);
        id
    }

    fn new_pair(&mut self, a: u32, b: u32, line: u32) -> u32 {
        let a_ = &mut self.arr;
        let h = a_.origin.len() as u32;
        a_.origin.extend([a, b]);
        a_.next.extend([NIL, NIL]);
        a_.prev.extend([NIL, NIL]);
        a_.face.extend([NIL, NIL]);
        a_.line.extend([line, line]);
        h
    }

    fn link(&mut self, a: u32, b: u32) {
        self.arr.next[a as usize] = b;
        self.arr.prev[b as usize] = a;
    }

    fn init_first(&mut self) {
        let l0 = self.new_vertex(VertexKind::LeftEnd(0), None);
        let r0 = self.new_vertex(VertexKind::RightEnd(0), None);
        let e = self.new_pair(l0, r0, 0);
        let top = self.new_pair(r0, l0, NIL);
        let bot = self.new_pair(l0, r0, NIL);
        // above: e -> top ; below: twin(e) -> bot ; outside: twin(top) -> twin(bot)
        self.link(e, top);
        self.link(top, e);
        self.link(twin(e), bot);
        self.link(bot, twin(e));
        self.link(twin(top), twin(bot));
        self.link(twin(bot), twin(top));
        let arr = &mut self.arr;
        for (h, f) in [(e, 0), (top, 0), (twin(e), 1), (bot, 1), (twin(top), 2), (twin(bot), 2)] {
            arr.face[h as usize] = f;
        }
        arr.face_edge = vec![e, twin(e), twin(top)];
        arr.left_end[0] = l0;
        arr.right_end[0] = r0;
        arr.first_edge[0] = e;
        self.frame_out[r0 as usize] = top;
        self.frame_out[l0 as usize] = bot;
        self.by_slope.insert(self.arr.lines[0].slope.clone(), 0);
    }

    /// Splits `h` (u -> v) at the new vertex `w`; returns the half-edge w -> v.
    fn split_edge(&mut self, h: u32, w: u32) -> u32 {
        let v = self.arr.dest(h);
        let line = self.arr.line[h as usize];
        // keep even ids pointing right along lines
        let g = if h & 1 == 0 { self.new_pair(w, v, line) } else { twin(self.new_pair(v, w, line)) };
        let arr = &mut self.arr;
        arr.origin[twin(h) as usize] = w;
        let hn = arr.next[h as usize];
        let tp = arr.prev[twin(h) as usize];
        arr.face[g as usize] = arr.face[h as usize];
        arr.face[twin(g) as usize] = arr.face[twin(h) as usize];
        self.link(g, hn);
        self.link(h, g);
        self.link(tp, twin(g));
        self.link(twin(g), twin(h));
        if line != NIL && self.arr.first_edge[line as usize] == twin(h) {
            self.arr.first_edge[line as usize] = twin(g);
        }
        g
    }

    /// Adds the edge a -> b on `line` inside the face of `a_out`, given the
    /// face's half-edges entering and leaving `a` and `b`. The part above the
    /// new edge keeps the old face id.
    fn split_face(&mut self, a_in: u32, a_out: u32, b_in: u32, b_out: u32, line: u32) -> u32 {
        let f = self.arr.face[a_out as usize];
        let a = self.arr.origin(a_out);
        let b = self.arr.origin(b_out);
        let n1 = self.new_pair(a, b, line);
        let n2 = twin(n1);
        self.link(a_in, n1);
        self.link(n1, b_out);
        self.link(b_in, n2);
        self.link(n2, a_out);
        let g = self.arr.face_edge.len() as u32;
        let arr = &mut self.arr;
        arr.face[n1 as usize] = f;
        arr.face_edge[f as usize] = n1;
        arr.face_edge.push(n2);
        let mut h = n2;
        loop {
            arr.face[h as usize] = g;
            h = arr.next[h as usize];
            if h == n2 {
                break;
            }
        }
        n1
    }

    fn side(&self, v: u32, l: &Line) -> Side {
        vertex_side(&self.arr.kinds, &self.arr.points, &self.arr.lines, v, l)
    }

    fn insert(&mut self, li: u32) -> Result<()> {
        let l = self.arr.lines[li as usize].clone();
        let s = l.slope.clone();
        // ccw neighbours of the new left end on the frame
        let pred = match self.by_slope.range(..s.clone()).next_back() {
            Some((_, &m)) => self.arr.left_end[m as usize],
            None => self.arr.right_end[*self.by_slope.values().next_back().unwrap() as usize],
        };
        let w = self.new_vertex(VertexKind::LeftEnd(li), None);
        self.arr.left_end[li as usize] = w;
        let h = self.frame_out[pred as usize];
        let g = self.split_edge(h, w);
        self.frame_out[w as usize] = g;
        let (mut a_in, mut a_out) = (h, g);
        let mut first = true;
        loop {
            let s0 = self.side(self.arr.dest(a_out), &l);
            if s0 == Side::On {
                return Err(self.concurrency(self.arr.dest(a_out), li));
            }
            let mut e = self.arr.next(a_out);
            loop {
                let d = self.arr.dest(e);
                let sd = self.side(d, &l);
                if sd == Side::On {
                    return Err(self.concurrency(d, li));
                }
                if sd != s0 {
                    break;
                }
                e = self.arr.next(e);
                debug_assert_ne!(e, a_in, "line never leaves the face");
            }
            let m = self.arr.line[e as usize];
            if m == NIL {
                let r = self.new_vertex(VertexKind::RightEnd(li), None);
                self.arr.right_end[li as usize] = r;
                let g = self.split_edge(e, r);
                self.frame_out[r as usize] = g;
                let n1 = self.split_face(a_in, a_out, e, g, li);
                if first {
                    self.arr.first_edge[li as usize] = n1;
                }
                break;
            }
            let p = intersect_lines(&l, &self.arr.lines[m as usize]).expect("distinct slopes");
            let c = self.new_vertex(VertexKind::Crossing(li.min(m), li.max(m)), Some(p));
            let g = self.split_edge(e, c);
            let n1 = self.split_face(a_in, a_out, e, g, li);
            if first {
                self.arr.first_edge[li as usize] = n1;
                first = false;
            }
            a_in = twin(g);
            a_out = twin(e);
        }
        self.by_slope.insert(s, li);
        Ok(())
    }

    fn concurrency(&self, v: u32, li: u32) -> GeomError {
        match self.arr.kinds[v as usize] {
            VertexKind::Crossing(a, b) => {
                let mut idx = vec![a as usize, b as usize, li as usize];
                idx.sort_unstable();
                GeomError::gp(idx, "three concurrent lines")
            }
            VertexKind::LeftEnd(m) | VertexKind::RightEnd(m) => {
                GeomError::gp(vec![m.min(li) as usize, m.max(li) as usize], "equal slopes")
            }
        }
    }
}
