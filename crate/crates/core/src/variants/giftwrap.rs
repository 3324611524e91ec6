use crate::error::{GeomError, Result};
use crate::geom::{orientation, Orientation, Point};
use crate::hull::ConvexHull;

/// Seen from `p`, whether `q` is a better next hull vertex than `r` in a
/// clockwise wrap: `r` lies to the right of `p -> q`, or on the same ray and
/// closer.
pub fn wraps_past(p: &Point, q: &Point, r: &Point) -> bool {
    match orientation(p, r, q) {
        Orientation::CounterClockwise => true,
        Orientation::Clockwise => false,
        Orientation::Collinear => p.dist2(q) > p.dist2(r),
    }
}

/// Index of the best vertex of `v` seen from `p`, which must lie strictly
/// outside the polygon. Seen from outside, "better" is cyclically unimodal
/// along the vertex cycle, so the peak is found by a binary search on a
/// predicate that is monotone once the cycle is cut at vertex 0.
pub fn tangent(p: &Point, v: &[Point]) -> usize {
    let n = v.len();
    if n <= 3 {
        return tangent_linear(p, v);
    }
    let up = |i: usize| wraps_past(p, &v[(i + 1) % n], &v[i]);
    let pred: Box<dyn Fn(usize) -> bool> = if up(0) {
        Box::new(|i| !up(i) || wraps_past(p, &v[0], &v[i]))
    } else {
        Box::new(|i| !up(i) && wraps_past(p, &v[i], &v[0]))
    };
    let (mut lo, mut hi) = (1, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo == n {
        0
    } else {
        lo
    }
}

pub fn tangent_linear(p: &Point, v: &[Point]) -> usize {
    (1..v.len()).fold(0, |b, i| if wraps_past(p, &v[i], &v[b]) { i } else { b })
}

/// One wrapping step over a family of group hulls. `p` is vertex `own` of
/// its group, `dir` the direction of the hull edge that ended at `p`. Returns
/// the group and vertex index of the next clockwise vertex of the union.
pub fn gift_wrap_query(
    groups: &[ConvexHull],
    own: (usize, usize),
    dir: (&Point, &Point),
) -> Result<(usize, usize)> {
    let p = &groups[own.0].vertices()[own.1];
    let mut best: Option<(usize, usize)> = None;
    for (g, h) in groups.iter().enumerate() {
        let v = h.vertices();
        let i = if g == own.0 {
            if v.len() == 1 {
                continue;
            }
            (own.1 + 1) % v.len()
        } else {
            tangent(p, v)
        };
        let q = &v[i];
        // everything lies on the closed right side of the previous edge
        let ahead = Point::new(&p.x + &(&dir.1.x - &dir.0.x), &p.y + &(&dir.1.y - &dir.0.y));
        if orientation(p, &ahead, q) == Orientation::CounterClockwise {
            return Err(GeomError::SideViolation { index: g });
        }
        if best.is_none_or(|(bg, bi)| wraps_past(p, q, &groups[bg].vertices()[bi])) {
            best = Some((g, i));
        }
    }
    best.ok_or_else(|| GeomError::DegenerateQuery("wrap over a single point".into()))
}

/// Clockwise gift wrapping over group hulls, starting at the leftmost point
/// and stopping after `limit` advances. Returns the hull when the wrap closes
/// in time, and the number of advances made either way.
pub fn wrap_groups(groups: &[ConvexHull], limit: u64) -> Result<(Option<ConvexHull>, u64)> {
    let start = (0..groups.len())
        .min_by(|&a, &b| groups[a].leftmost().cmp(groups[b].leftmost()))
        .map(|g| (g, 0))
        .ok_or_else(|| GeomError::DegenerateQuery("no groups".into()))?;
    let at = |(g, i): (usize, usize)| groups[g].vertices()[i].clone();
    let s = at(start);
    if groups.iter().map(ConvexHull::len).sum::<usize>() == 1 {
        return Ok((Some(ConvexHull::from_clockwise(vec![s])), 0));
    }
    let below = Point::new(s.x.clone(), &s.y - &crate::ExactCoord::one());
    let mut chain = vec![s.clone()];
    let mut prev = below;
    let mut cur = start;
    let mut advances = 0;
    while advances < limit {
        let next = gift_wrap_query(groups, cur, (&prev, &chain[chain.len() - 1]))?;
        advances += 1;
        let q = at(next);
        if q == s {
            return Ok((Some(ConvexHull::from_clockwise(chain)), advances));
        }
        prev = chain[chain.len() - 1].clone();
        chain.push(q);
        cur = next;
    }
    Ok((None, advances))
}
