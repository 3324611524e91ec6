use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, TrapezoidalMap};
use crate::error::Result;
use crate::geom::{sort_by_slope, Line, Point};

use super::engine::{merge_round, refine_round, LevelView, RoundScratch};
use super::gradation::nested_order;
use super::{assign_points, graham_hull, ConvexHull, QueryStats, SMALL_N};

/// Level sizes, smallest first: halve `n` with rounding up until the next
/// halving would reach `ceil(n / log2 n)`, which then becomes the first size.
pub fn oblivious_sizes(n: usize) -> Vec<usize> {
    if n <= SMALL_N {
        return vec![n];
    }
    let floor = (n as f64 / (n as f64).log2()).ceil() as usize;
    let mut sizes = vec![n];
    loop {
        let next = sizes.last().unwrap().div_ceil(2);
        if next <= floor {
            sizes.push(floor);
            break;
        }
        sizes.push(next);
    }
    sizes.reverse();
    sizes
}

/// The level sizes for `n` lines and the line order drawn from `seed`. The
/// order depends on `n` and `seed` only, never on the lines themselves.
pub fn oblivious_order(n: usize, seed: u64) -> (Vec<u32>, Vec<usize>) {
    let sizes = oblivious_sizes(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = nested_order(n, sizes[sizes.len().saturating_sub(2)], &mut rng);
    (order, sizes)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Level {
    arrangement: Arrangement,
    tmap: TrapezoidalMap,
    by_slope: Vec<u32>,
}

/// Nested random subsets `L_1 ⊂ ... ⊂ L_r = L` fixed at preprocessing time,
/// each with its own arrangement. A query only ever searches `A(L_k)` for the
/// points on `L_k`, so its cost bound needs the points to be chosen without
/// knowledge of the sampling seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObliviousHullIndex {
    seed: u64,
    lines: Vec<Line>,
    /// Line ids; the first `sizes[k]` of them form level `k`, and a line's
    /// position here is its id inside every level arrangement.
    order: Vec<u32>,
    sizes: Vec<usize>,
    levels: Vec<Level>,
}

impl ObliviousHullIndex {
    pub fn preprocess(lines: &[Line], seed: u64) -> Result<Self> {
        sort_by_slope(lines)?;
        let (order, sizes) = oblivious_order(lines.len(), seed);
        let levels = sizes
            .iter()
            .map(|&s| {
                let sub: Vec<Line> = order[..s].iter().map(|&i| lines[i as usize].clone()).collect();
                let arrangement = Arrangement::build(&sub)?;
                let tmap = TrapezoidalMap::build(&arrangement);
                Ok(Level { by_slope: sort_by_slope(&sub)?, arrangement, tmap })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ObliviousHullIndex { seed, lines: lines.to_vec(), order, sizes, levels })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Line ids of level `k`.
    pub fn level_lines(&self, k: usize) -> &[u32] {
        &self.order[..self.sizes[k]]
    }

    /// The full ordering whose prefixes are the levels.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub(crate) fn level_parts(&self, k: usize) -> (&Arrangement, &TrapezoidalMap) {
        (&self.levels[k].arrangement, &self.levels[k].tmap)
    }

    pub fn query_hull(&self, points: &[(Point, u32)]) -> Result<(ConvexHull, QueryStats)> {
        let pts = assign_points(&self.lines, points)?;
        Ok(self.hull_of_assigned(&pts))
    }

    pub(crate) fn hull_of_assigned(&self, pts: &[Point]) -> (ConvexHull, QueryStats) {
        let mut stats = QueryStats { rounds: 1, ..Default::default() };
        if self.sizes.len() == 1 {
            stats.sort_volume.push(pts.len() as u64);
            return (graham_hull(pts), stats);
        }
        let at = |i: usize| pts[self.order[i] as usize].clone();
        let first: Vec<Point> = (0..self.sizes[0]).map(at).collect();
        stats.sort_volume.push(first.len() as u64);
        let mut hull = graham_hull(&first);
        let mut scratch = RoundScratch::default();
        for k in 1..self.sizes.len() {
            let lv = &self.levels[k];
            let view = LevelView { arr: &lv.arrangement, tmap: &lv.tmap, by_slope: &lv.by_slope };
            let fresh: Vec<(u32, Point)> = (self.sizes[k - 1]..self.sizes[k]).map(|i| (i as u32, at(i))).collect();
            let lists = refine_round(view, &hull, &fresh, &mut scratch, &mut stats);
            hull = merge_round(&hull, lists, &mut stats);
            stats.rounds += 1;
        }
        (hull, stats)
    }
}
