//! Points, non-vertical lines, exact predicates and the point/line duality.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::exact::ExactCoord;

/// A point in the plane. Ordered lexicographically by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: ExactCoord,
    pub y: ExactCoord,
}

impl Point {
    pub fn new(x: impl Into<ExactCoord>, y: impl Into<ExactCoord>) -> Self {
        Point { x: x.into(), y: y.into() }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(x, y)
    }

    pub fn sub(&self, o: &Point) -> (ExactCoord, ExactCoord) {
        (&self.x - &o.x, &self.y - &o.y)
    }

    pub fn dist2(&self, o: &Point) -> ExactCoord {
        let (dx, dy) = self.sub(o);
        &dx * &dx + &dy * &dy
    }
}

/// The non-vertical line `y = slope * x + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Line {
    pub slope: ExactCoord,
    pub intercept: ExactCoord,
}

impl Line {
    pub fn new(slope: impl Into<ExactCoord>, intercept: impl Into<ExactCoord>) -> Self {
        Line { slope: slope.into(), intercept: intercept.into() }
    }

    /// Line `a*x + b*y = c`; rejects `b == 0` as vertical. `index` is only
    /// used for error reporting.
    pub fn from_coefficients(
        a: &ExactCoord,
        b: &ExactCoord,
        c: &ExactCoord,
        index: usize,
    ) -> Result<Self> {
        if b.is_zero() {
            return Err(GeomError::VerticalLine { index });
        }
        Ok(Line { slope: -(a / b), intercept: c / b })
    }

    /// The line through two points; vertical pairs are rejected.
    pub fn through(p: &Point, q: &Point, index: usize) -> Result<Self> {
        let dx = &q.x - &p.x;
        if dx.is_zero() {
            return Err(GeomError::VerticalLine { index });
        }
        let slope = (&q.y - &p.y) / dx;
        let intercept = &p.y - &slope * &p.x;
        Ok(Line { slope, intercept })
    }

    /// Line with the given slope through `p`.
    pub fn with_slope_through(slope: ExactCoord, p: &Point) -> Self {
        let intercept = &p.y - &slope * &p.x;
        Line { slope, intercept }
    }

    pub fn eval(&self, x: &ExactCoord) -> ExactCoord {
        &self.slope * x + &self.intercept
    }

    pub fn contains(&self, p: &Point) -> bool {
        side_of_line(p, self) == Side::On
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Above,
    On,
    Below,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Side::Above => Side::Below,
            Side::Below => Side::Above,
            Side::On => Side::On,
        }
    }
}

/// Sign of the determinant of `(q - p, r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    match ExactCoord::det2_sign(&ax, &by, &ay, &bx) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// `orientation` as -1 / 0 / +1 (counter-clockwise positive).
pub fn orient_sign(p: &Point, q: &Point, r: &Point) -> i32 {
    match orientation(p, q, r) {
        Orientation::CounterClockwise => 1,
        Orientation::Clockwise => -1,
        Orientation::Collinear => 0,
    }
}

pub fn intersect_lines(l1: &Line, l2: &Line) -> Option<Point> {
    if let Some(p) = ExactCoord::cramer(&l1.slope, &l1.intercept, &l2.slope, &l2.intercept) {
        return p.map(|(x, y)| Point { x, y });
    }
    let ds = &l1.slope - &l2.slope;
    if ds.is_zero() {
        return None;
    }
    let x = (&l2.intercept - &l1.intercept) / ds;
    let y = l1.eval(&x);
    Some(Point { x, y })
}

pub fn side_of_line(p: &Point, l: &Line) -> Side {
    match ExactCoord::cmp_affine(&p.y, &l.slope, &p.x, &l.intercept) {
        Ordering::Greater => Side::Above,
        Ordering::Less => Side::Below,
        Ordering::Equal => Side::On,
    }
}

/// `y = a x + b` maps to the point `(a, -b)`.
pub fn dualize_line(l: &Line) -> Point {
    Point { x: l.slope.clone(), y: -&l.intercept }
}

/// `(c, d)` maps to the line `y = c x - d`.
pub fn dualize_point(p: &Point) -> Line {
    Line { slope: p.x.clone(), intercept: -&p.y }
}

/// Line ids sorted by strictly increasing slope, or the offending pair.
pub fn sort_by_slope(lines: &[Line]) -> Result<Vec<u32>> {
    let mut ids: Vec<u32> = (0..lines.len() as u32).collect();
    ids.sort_by(|&a, &b| lines[a as usize].slope.cmp(&lines[b as usize].slope));
    for w in ids.windows(2) {
        if lines[w[0] as usize].slope == lines[w[1] as usize].slope {
            let (a, b) = (w[0].min(w[1]) as usize, w[0].max(w[1]) as usize);
            return Err(GeomError::gp(vec![a, b], "equal slopes"));
        }
    }
    Ok(ids)
}

/// Rejects two points sharing an x-coordinate.
pub fn check_distinct_x(points: &[Point]) -> Result<()> {
    let mut ids: Vec<usize> = (0..points.len()).collect();
    ids.sort_by(|&a, &b| points[a].x.cmp(&points[b].x));
    for w in ids.windows(2) {
        if points[w[0]].x == points[w[1]].x {
            return Err(GeomError::gp(
                vec![w[0].min(w[1]), w[0].max(w[1])],
                "equal x-coordinates",
            ));
        }
    }
    Ok(())
}
