//! Instance generators. Every generator is a pure function of its
//! parameters and seed.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::exact::ExactCoord;
use crate::geom::{intersect_lines, Line, Point};

/// A set of lines, optionally with one point on each of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub generator: String,
    pub seed: u64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub lines: Vec<Line>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<(Point, u32)>>,
}

impl Instance {
    /// Points ordered by line id.
    pub fn points_by_line(&self) -> Option<Vec<Point>> {
        let pts = self.points.as_ref()?;
        let mut out = vec![None; self.lines.len()];
        for (p, l) in pts {
            out[*l as usize] = Some(p.clone());
        }
        out.into_iter().collect()
    }

    pub fn bare_points(&self) -> Vec<Point> {
        self.points.as_ref().map(|v| v.iter().map(|(p, _)| p.clone()).collect()).unwrap_or_default()
    }
}

/// Coordinate range for generated points.
const COORD: i64 = 1 << 16;

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn slope_range(n: usize) -> i64 {
    (4 * n as i64).max(1000)
}

/// `n` distinct integer slopes.
fn distinct_slopes<R: Rng>(n: usize, rng: &mut R) -> Vec<i64> {
    let range = slope_range(n);
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = rng.gen_range(-range..=range);
        if seen.insert(s) {
            out.push(s);
        }
    }
    out
}

/// Three lines through a common point, if any.
fn concurrent_line(pts: &[Point], slopes: &[i64]) -> Option<[usize; 3]> {
    let as_int = |c: &ExactCoord| if c.is_integer() { c.numer().to_i64().map(i128::from) } else { None };
    let ints: Option<Vec<(i128, i128)>> = pts.iter().map(|p| Some((as_int(&p.x)?, as_int(&p.y)?))).collect();
    if let Some(ints) = ints {
        return concurrent_line_int(&ints, slopes);
    }
    let lines: Vec<Line> = pts.iter().zip(slopes).map(|(p, &s)| Line::with_slope_through(s.into(), p)).collect();
    let mut xs: Vec<(ExactCoord, usize)> = Vec::with_capacity(lines.len());
    for (i, li) in lines.iter().enumerate() {
        xs.clear();
        xs.extend(
            lines.iter().enumerate().filter(|&(j, _)| j != i).map(|(j, lj)| {
                (intersect_lines(li, lj).expect("distinct slopes").x, j)
            }),
        );
        xs.sort_unstable();
        if let Some(w) = xs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Some([i, w[0].1, w[1].1]);
        }
    }
    None
}

/// Integer version of [`concurrent_line`]; crossings are compared as
/// unreduced fractions.
fn concurrent_line_int(pts: &[(i128, i128)], slopes: &[i64]) -> Option<[usize; 3]> {
    let b: Vec<i128> = pts.iter().zip(slopes).map(|(&(x, y), &s)| y - s as i128 * x).collect();
    let mut xs: Vec<(i128, i128, usize)> = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        xs.clear();
        for j in (0..pts.len()).filter(|&j| j != i) {
            let (num, den) = (b[j] - b[i], slopes[i] as i128 - slopes[j] as i128);
            xs.push(if den < 0 { (-num, -den, j) } else { (num, den, j) });
        }
        xs.sort_unstable_by(|p, q| (p.0 * q.1).cmp(&(q.0 * p.1)));
        if let Some(w) = xs.windows(2).find(|w| w[0].0 * w[1].1 == w[1].0 * w[0].1) {
            return Some([i, w[0].2, w[1].2]);
        }
    }
    None
}

/// Above this size generators skip the quadratic concurrency screen; the
/// arrangement build still rejects any concurrency it meets.
pub const SCREEN_LIMIT: usize = 8192;

/// Integer numerators for slopes `s / den` of lines through `pts`, redrawn
/// until no three lines share a point.
fn screened_slopes<R: Rng>(pts: &[Point], den: i64, rng: &mut R) -> Vec<i64> {
    let n = pts.len();
    let mut slopes = distinct_slopes(n, rng);
    if n > SCREEN_LIMIT {
        return slopes;
    }
    // scaling y by `den` maps the lines to integer slopes and keeps incidences
    let scaled: Vec<Point> = if den == 1 {
        pts.to_vec()
    } else {
        let d = ExactCoord::from_int(den);
        pts.iter().map(|p| Point { x: p.x.clone(), y: &p.y * &d }).collect()
    };
    let range = slope_range(n);
    // redrawing a fixed one of the three can loop forever when the other
    // two both pass through its point
    while let Some(triple) = concurrent_line(&scaled, &slopes) {
        let j = triple[rng.gen_range(0..3)];
        loop {
            let s = rng.gen_range(-range..=range);
            if !slopes.contains(&s) {
                slopes[j] = s;
                break;
            }
        }
    }
    slopes
}

/// Puts the point `pts[i]` on line `ids[i]`, with a random slope of the form
/// `s / den`.
fn lines_with_ids<R: Rng>(pts: Vec<Point>, ids: &[u32], den: i64, name: &str, seed: u64, rng: &mut R) -> Instance {
    let n = pts.len();
    let slopes = screened_slopes(&pts, den, rng);
    let mut lines = vec![Line::new(0, 0); n];
    let mut points = Vec::with_capacity(n);
    for (i, p) in pts.into_iter().enumerate() {
        let l = Line::with_slope_through(ExactCoord::from_ratio(slopes[i], den), &p);
        lines[ids[i] as usize] = l;
        points.push((p, ids[i]));
    }
    points.sort_by_key(|&(_, l)| l);
    Instance { generator: name.into(), seed, n, k: None, lines, points: Some(points) }
}

/// Draws a line of random slope through each point and shuffles the ids.
/// Slopes are redrawn until no three lines share a point.
pub fn lines_through<R: Rng>(pts: Vec<Point>, name: &str, seed: u64, rng: &mut R) -> Instance {
    let mut ids: Vec<u32> = (0..pts.len() as u32).collect();
    ids.shuffle(rng);
    lines_with_ids(pts, &ids, 1, name, seed, rng)
}

/// Draws fresh x values until `n` distinct ones are collected.
fn distinct_xs<R: Rng>(n: usize, range: i64, rng: &mut R) -> Vec<i64> {
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = rng.gen_range(-range..=range);
        if seen.insert(x) {
            out.push(x);
        }
    }
    out
}

/// Uniform points in a square.
pub fn random(n: usize, seed: u64) -> Instance {
    let mut rng = rng_for(seed);
    let pts = distinct_xs(n, COORD, &mut rng).into_iter().map(|x| Point::from_ints(x, rng.gen_range(-COORD..=COORD))).collect();
    lines_through(pts, "random", seed, &mut rng)
}

/// Every point is a hull vertex: the points lie on two opposite parabolic
/// arcs that bound a convex region.
pub fn convex_position(n: usize, seed: u64) -> Instance {
    let mut rng = rng_for(seed);
    let r = (4 * n as i64).max(1024);
    let pts = distinct_xs(n, r, &mut rng)
        .into_iter()
        .map(|x| Point::from_ints(x, if rng.gen_bool(0.5) { x * x } else { 2 * r * r - x * x }))
        .collect();
    lines_through(pts, "convex-position", seed, &mut rng)
}

/// `h` hull vertices around a circle, the rest strictly inside.
pub fn few_hull(n: usize, h: usize, seed: u64) -> Result<Instance> {
    if h < 3 || h > n {
        return Err(GeomError::InvalidParameter(format!("few-hull needs 3 <= h <= n, got h={h}, n={n}")));
    }
    let mut rng = rng_for(seed);
    let r = (COORD * 16) as f64;
    let step = std::f64::consts::TAU / h as f64;
    let mut xs = HashSet::new();
    let mut pts = Vec::with_capacity(n);
    for i in 0..h {
        loop {
            let t = step * (i as f64 + rng.gen_range(-0.1..0.1));
            let x = (r * t.cos()).round() as i64;
            if xs.insert(x) {
                pts.push(Point::from_ints(x, (r * t.sin()).round() as i64));
                break;
            }
        }
    }
    // a square well inside the polygon's inscribed circle
    let half = (r * (step * 0.6).cos() * 0.5) as i64;
    while pts.len() < n {
        let x = rng.gen_range(-half..=half);
        if xs.insert(x) {
            pts.push(Point::from_ints(x, rng.gen_range(-half..=half)));
        }
    }
    let mut inst = lines_through(pts, "few-hull", seed, &mut rng);
    inst.k = Some(h);
    Ok(inst)
}

/// Nearly horizontal lines: line `i` passes through `(values[i], i + 1)`.
/// Exactly horizontal lines would share a slope, so each is tilted by a
/// slope below `1 / (4 n max|x|)` in absolute value; over the x-range of
/// the points no line leaves the band `y = i + 1 ± 1/4`.
pub fn sorting_reduction_from(values: &[i64], seed: u64) -> Result<Instance> {
    let n = values.len();
    if n == 0 || values.iter().collect::<HashSet<_>>().len() != n {
        return Err(GeomError::InvalidParameter("sorting-reduction needs distinct values".into()));
    }
    let pts: Vec<Point> = values.iter().enumerate().map(|(i, &x)| Point::from_ints(x, i as i64 + 1)).collect();
    let ids: Vec<u32> = (0..n as u32).collect();
    let xmax = values.iter().map(|v| v.abs()).max().unwrap().max(1);
    let den = 4 * n as i64 * xmax * slope_range(n);
    Ok(lines_with_ids(pts, &ids, den, "sorting-reduction", seed, &mut rng_for(seed)))
}

/// [`sorting_reduction_from`] on a random permutation of `1..=n`.
pub fn sorting_reduction(n: usize, seed: u64) -> Result<Instance> {
    let mut rng = rng_for(seed);
    let mut values: Vec<i64> = (1..=n as i64).collect();
    values.shuffle(&mut rng);
    sorting_reduction_from(&values, seed)
}

/// Point `i` at `(x_i, (i + 1) / n)` on a nearly horizontal line. The `x_i`
/// are distinct integers in `[0, 2n]`, so some pairs are at distance one and
/// the rest at distance two or more. Tilts are as in
/// [`sorting_reduction_from`], scaled to the spacing `1 / n`.
pub fn fuzzy_sep(n: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(GeomError::InvalidParameter("fuzzy-sep needs n >= 1".into()));
    }
    let mut rng = rng_for(seed);
    let mut xs: Vec<i64> = (0..=2 * n as i64).collect();
    xs.shuffle(&mut rng);
    xs.truncate(n);
    let nn = n as i64;
    let pts: Vec<Point> =
        xs.iter().enumerate().map(|(i, &x)| Point::new(x, ExactCoord::from_ratio(i as i64 + 1, nn))).collect();
    let ids: Vec<u32> = (0..n as u32).collect();
    let den = 8 * nn * nn * slope_range(n);
    Ok(lines_with_ids(pts, &ids, den, "fuzzy-sep", seed, &mut rng))
}

/// Seed offset the oblivious variant of [`fig2_adversarial`] uses in place
/// of the true sampling seed.
const BLIND: u64 = 0x9e37_79b9_7f4a_7c15;

/// Points placed against the level order of an oblivious index built with
/// `seed`. Each level's new points lie on a downward parabola far above
/// every supporting line of the previous levels' upper hull, so each of them
/// conflicts with every upper edge built so far.
///
/// With `aware` the layers follow the true order for `seed`. Otherwise they
/// follow the order of an unrelated seed, which from the index's point of
/// view is an arbitrary layering chosen without knowing its sample.
pub fn fig2_adversarial(n: usize, seed: u64, aware: bool) -> Result<Instance> {
    if n < 3 {
        return Err(GeomError::InvalidParameter("fig2-adversarial needs n >= 3".into()));
    }
    let (order, sizes) = crate::hull::oblivious_order(n, if aware { seed } else { seed ^ BLIND });
    let mut layer = vec![0i64; n];
    for (j, w) in sizes.windows(2).enumerate() {
        for &id in &order[w[0]..w[1]] {
            layer[id as usize] = j as i64 + 1;
        }
    }
    let mut rng = rng_for(seed);
    let r = 2 * n as i64;
    // every tangent of `y = c - x^2` stays below `c + 3 r^2` on `[-r, r]`
    let lift = 5 * r * r;
    let xs = distinct_xs(n, r, &mut rng);
    let pts: Vec<Point> = xs.iter().zip(&layer).map(|(&x, &j)| Point::from_ints(x, j * lift - x * x)).collect();
    let ids: Vec<u32> = (0..n as u32).collect();
    let name = if aware { "fig2-adversarial" } else { "fig2-oblivious" };
    Ok(lines_with_ids(pts, &ids, 1, name, seed, &mut rng))
}

/// Instance kinds accepted by [`generate`].
pub const KINDS: &[&str] =
    &["random", "convex-position", "few-hull", "sorting-reduction", "fuzzy-sep", "fig2-adversarial", "fig2-oblivious"];

/// Dispatches on the kind name. `k` is the hull size for `few-hull` and is
/// ignored elsewhere.
pub fn generate(kind: &str, n: usize, k: Option<usize>, seed: u64) -> Result<Instance> {
    match kind {
        "random" => Ok(random(n, seed)),
        "convex-position" => Ok(convex_position(n, seed)),
        "few-hull" => few_hull(n, k.unwrap_or(8), seed),
        "sorting-reduction" => sorting_reduction(n, seed),
        "fuzzy-sep" => fuzzy_sep(n, seed),
        "fig2-adversarial" => fig2_adversarial(n, seed, true),
        "fig2-oblivious" => fig2_adversarial(n, seed, false),
        _ => Err(GeomError::InvalidParameter(format!("unknown generator kind {kind:?}"))),
    }
}
