use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::exact::ExactCoord;
use crate::geom::{check_distinct_x, dualize_line, dualize_point, intersect_lines, sort_by_slope, Line, Point};
use crate::hull::{gradation_sizes, nested_order, ConvexHull, HullIndex, ObliviousHullIndex};

use super::blocks::{decompose, Cap, DualView};
use super::complex::{LevelComplex, LevelEdge, LevelVertex};
use super::sweep::{baseline_level_of, glue, sweep_strip};

#[derive(Clone, Debug, Serialize, Deserialize)]
enum Dual {
    Standard(Box<HullIndex>),
    Oblivious(ObliviousHullIndex),
}

/// Which route a level query took.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LevelPath {
    /// `k = 0`: the lower envelope read off the dual upper hull.
    #[default]
    HullDual,
    /// `k >= log2 n`: one sweep over all lines.
    Baseline,
    /// Gradation with block updates.
    Blocks,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStats {
    /// `c_B`, split into lines crossing both walls and the rest.
    pub conflicts: u64,
    pub spanning: u64,
    pub non_spanning: u64,
    /// Vertices of the `k̃`-level of the block's lines inside the block.
    pub level_vertices: u64,
    /// Crossings of the block's lines on or below the upper hull of that level.
    pub under_hull: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundStats {
    pub sample: usize,
    pub lines: usize,
    /// `|V_k̃(S)|` of the previous sample.
    pub sample_level_vertices: u64,
    pub cap_vertices: usize,
    pub cells_per_block: usize,
    pub cell_conflicts: Vec<u64>,
    pub blocks: Vec<BlockStats>,
    pub zone_complexity: u64,
    pub relocations: u64,
    /// Crossings under a block's hull whose level exceeds `2k̃ - 1`.
    pub deep_crossings: u64,
    /// The cap was unbounded, so the round swept all lines directly.
    pub fallback: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub path: LevelPath,
    pub k_tilde: Option<u32>,
    pub sizes: Vec<usize>,
    pub rounds: Vec<RoundStats>,
}

impl RoundStats {
    pub fn block_conflicts(&self) -> u64 {
        self.blocks.iter().map(|b| b.conflicts).sum()
    }
}

/// `Σ c (log c + log² k̃ + log 1/p)` over cells with `c ≥ β k̃ / p²`.
pub fn heavy_cell_sum(cell_conflicts: &[u64], beta: f64, k_tilde: u32, p: f64) -> f64 {
    let kt = k_tilde as f64;
    let threshold = beta * kt / (p * p);
    cell_conflicts
        .iter()
        .filter(|&&c| c as f64 >= threshold && c > 0)
        .map(|&c| {
            let c = c as f64;
            c * (c.log2() + kt.log2().powi(2) + (1.0 / p).log2())
        })
        .sum()
}

/// Sizes of a level query's gradation: the hull gradation cut short once a
/// size exceeds `cap`, after which the whole set follows.
pub fn truncated_sizes(sizes: &[usize], cap: usize) -> Vec<usize> {
    let n = *sizes.last().unwrap();
    let mut out = Vec::new();
    for &s in sizes {
        out.push(s);
        if s > cap {
            break;
        }
    }
    if out.last() != Some(&n) {
        out.push(n);
    }
    out
}

/// Points known in advance, stored as the arrangement of their dual lines.
/// A query hands in one line through each point and gets back the
/// `(<= k)`-level of those lines.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelIndex {
    points: Vec<Point>,
    dual: Dual,
}

impl LevelIndex {
    /// With `oblivious`, the sample order is fixed here from `seed` and every
    /// sample gets its own dual arrangement.
    pub fn preprocess(points: &[Point], oblivious: bool, seed: u64) -> Result<Self> {
        check_distinct_x(points)?;
        let duals: Vec<Line> = points.iter().map(dualize_point).collect();
        let dual = if oblivious {
            Dual::Oblivious(ObliviousHullIndex::preprocess(&duals, seed)?)
        } else {
            Dual::Standard(Box::new(HullIndex::preprocess(&duals)?))
        };
        Ok(LevelIndex { points: points.to_vec(), dual })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_oblivious(&self) -> bool {
        matches!(self.dual, Dual::Oblivious(_))
    }

    /// Checks one line per point and returns the lines indexed by point id.
    pub fn assign_lines(&self, lines: &[(Line, u32)]) -> Result<Vec<Line>> {
        let n = self.points.len();
        if lines.len() != n {
            return Err(GeomError::AssignmentSizeMismatch { expected: n, got: lines.len() });
        }
        let mut by_point: Vec<Option<Line>> = vec![None; n];
        for (i, (l, p)) in lines.iter().enumerate() {
            let p = *p as usize;
            if p >= n {
                return Err(GeomError::UnknownLine { line: p });
            }
            if by_point[p].is_some() {
                return Err(GeomError::DuplicateLineAssignment { line: p });
            }
            if !l.contains(&self.points[p]) {
                return Err(GeomError::LineNotThroughDeclaredPoint { index: i });
            }
            by_point[p] = Some(l.clone());
        }
        let out: Vec<Line> = by_point.into_iter().map(|l| l.expect("every point assigned")).collect();
        sort_by_slope(&out)?;
        Ok(out)
    }

    /// The `(<= k)`-level of the query lines; line ids in the result are
    /// point ids.
    pub fn query_level<R: Rng + ?Sized>(
        &self,
        lines: &[(Line, u32)],
        k: u32,
        rng: &mut R,
    ) -> Result<(LevelComplex, LevelStats)> {
        let lines = self.assign_lines(lines)?;
        let n = lines.len();
        if n == 0 {
            return Ok((LevelComplex::from_parts(k, vec![], vec![]), LevelStats::default()));
        }
        if k == 0 {
            return Ok((self.lower_envelope(&lines, rng)?, LevelStats::default()));
        }
        if n < 2 || k as f64 >= (n as f64).log2() {
            let stats = LevelStats { path: LevelPath::Baseline, ..Default::default() };
            return Ok((baseline_level_of(&lines, &(0..n as u32).collect::<Vec<_>>(), k)?, stats));
        }
        let kt = rng.gen_range(k..=2 * k);
        let cap = n.div_ceil(k as usize);
        let (sizes, order) = match &self.dual {
            Dual::Standard(_) => {
                let sizes = truncated_sizes(&gradation_sizes(n), cap);
                let m = sizes[sizes.len().saturating_sub(2)];
                (sizes, nested_order(n, m, rng))
            }
            Dual::Oblivious(o) => (truncated_sizes(o.level_sizes(), cap), o.order().to_vec()),
        };
        let mut stats = LevelStats { path: LevelPath::Blocks, k_tilde: Some(kt), sizes: sizes.clone(), rounds: vec![] };
        let mut prev = baseline_level_of(&lines, &order[..sizes[0]], kt)?;
        for i in 1..sizes.len() {
            let (next, rs) = self.update_level(&prev, &lines, &order[..sizes[i - 1]], &order[..sizes[i]], kt)?;
            stats.rounds.push(rs);
            prev = next;
        }
        Ok((prev.truncate(k), stats))
    }

    /// `lev_0` from the upper hull of the dual points: its vertices from
    /// right to left are the envelope's lines from left to right.
    fn lower_envelope<R: Rng + ?Sized>(&self, lines: &[Line], rng: &mut R) -> Result<LevelComplex> {
        let pts: Vec<(Point, u32)> = lines.iter().enumerate().map(|(i, l)| (dualize_line(l), i as u32)).collect();
        let hull: ConvexHull = match &self.dual {
            Dual::Standard(h) => h.query_hull(&pts, rng)?.0,
            Dual::Oblivious(o) => o.query_hull(&pts)?.0,
        };
        let id: HashMap<&Point, u32> = pts.iter().map(|(p, i)| (p, *i)).collect();
        let env: Vec<u32> = hull.upper().iter().rev().map(|p| id[p]).collect();
        Ok(envelope_complex(lines, &env))
    }

    /// One refinement: from `lev_{<=k̃}(S)` to `lev_{<=k̃}(L)` for `S ⊂ L`,
    /// both given as point ids.
    pub fn update_level(
        &self,
        prev: &LevelComplex,
        lines: &[Line],
        s: &[u32],
        l: &[u32],
        kt: u32,
    ) -> Result<(LevelComplex, RoundStats)> {
        let mut rs = RoundStats { sample: s.len(), lines: l.len(), ..Default::default() };
        if s.len() == l.len() {
            return Ok((prev.clone(), rs));
        }
        rs.sample_level_vertices = prev.level_vertices(kt).len() as u64;
        let cap = prev.level_polyline(kt, lines).and_then(|poly| {
            Cap::build(&poly.vertices, Some(poly.left_slope), Some(poly.right_slope))
        });
        let Some(cap) = cap else {
            rs.fallback = true;
            return Ok((baseline_level_of(lines, l, kt)?, rs));
        };
        rs.cap_vertices = cap.vertices.len();
        // p = |S|/|L|, so k̃/p = k̃ |L| / |S|
        let per_block = ((kt as usize * l.len()).div_ceil(s.len())).max(1);
        rs.cells_per_block = per_block;
        let view = self.view(l.len());
        let dec = decompose(cap, lines, l, per_block, &view);
        rs.zone_complexity = dec.zone_complexity;
        rs.relocations = dec.relocations;
        let mut parts = Vec::with_capacity(dec.blocks.len());
        for b in &dec.blocks {
            let mut bs = BlockStats {
                conflicts: b.conflicts.len() as u64,
                spanning: b.spanning as u64,
                non_spanning: (b.conflicts.len() as u64) - b.spanning as u64,
                ..Default::default()
            };
            if !b.conflicts.is_empty() {
                let (lo, hi) = dec.walls(&b.cells);
                let out = sweep_strip(lines, &b.conflicts, lo, hi, kt, true)?;
                bs.level_vertices = out.zeta.len() as u64;
                let wall_point = |x: Option<&ExactCoord>, order: &[u32]| {
                    let x = x?;
                    let l = &lines[*order.get(kt as usize)? as usize];
                    Some(Point { y: l.eval(x), x: x.clone() })
                };
                let ray = |x: Option<&ExactCoord>, order: &[u32]| match x {
                    Some(_) => None,
                    None => order.get(kt as usize).map(|&i| lines[i as usize].slope.clone()),
                };
                let mut zeta: Vec<Point> = Vec::with_capacity(out.zeta.len() + 2);
                zeta.extend(wall_point(lo, &out.order_lo));
                zeta.extend(out.zeta.iter().cloned());
                zeta.extend(wall_point(hi, &out.order_hi));
                zeta.dedup();
                if let Some(h) = Cap::build(&zeta, ray(lo, &out.order_lo), ray(hi, &out.order_hi)) {
                    for (p, lev) in &out.all {
                        if h.covers(p) {
                            bs.under_hull += 1;
                            if *lev + 1 > 2 * kt {
                                rs.deep_crossings += 1;
                            }
                        }
                    }
                }
                parts.push(out);
            }
            rs.blocks.push(bs);
        }
        rs.cell_conflicts = dec.cell_conflicts;
        Ok((glue(kt, parts), rs))
    }

    /// The dual arrangement holding the duals of the first `m` points of the
    /// sample order (all points for the standard index).
    pub(crate) fn view(&self, m: usize) -> DualView<'_> {
        match &self.dual {
            Dual::Standard(h) => DualView {
                arr: h.arrangement(),
                tmap: h.trapezoids(),
                local: (0..self.points.len() as u32).collect(),
            },
            Dual::Oblivious(o) => {
                let level = o.level_sizes().iter().position(|&s| s == m).unwrap_or(o.level_sizes().len() - 1);
                let (arr, tmap) = o.level_parts(level);
                let mut local = vec![u32::MAX; self.points.len()];
                for (pos, &id) in o.order()[..o.level_sizes()[level]].iter().enumerate() {
                    local[id as usize] = pos as u32;
                }
                DualView { arr, tmap, local }
            }
        }
    }
}

/// The complex of a lower envelope given its lines from left to right.
pub fn envelope_complex(lines: &[Line], env: &[u32]) -> LevelComplex {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut left = None;
    for (i, &a) in env.iter().enumerate() {
        let right = env.get(i + 1).map(|&b| {
            let id = (a.min(b), a.max(b));
            let p = intersect_lines(&lines[a as usize], &lines[b as usize]).expect("distinct slopes");
            vertices.push(LevelVertex { point: p, lines: id, level: 0 });
            id
        });
        edges.push(LevelEdge { line: a, left, right, level: 0 });
        left = right;
    }
    LevelComplex::from_parts(0, vertices, edges)
}
