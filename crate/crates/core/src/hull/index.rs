use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, TrapezoidalMap};
use crate::error::Result;
use crate::geom::{sort_by_slope, Line, Point};

use super::engine::{merge_round, refine_round, LevelView, RefinedConflictLists, RoundScratch};
use super::{assign_points, build_gradation, graham_hull, ConvexHull, QueryStats, SMALL_N};

/// A preprocessed set of lines: their arrangement, its vertical
/// decomposition and the lines in slope order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HullIndex {
    arrangement: Arrangement,
    tmap: TrapezoidalMap,
    lines_by_slope: Vec<u32>,
}

impl HullIndex {
    pub fn preprocess(lines: &[Line]) -> Result<Self> {
        let lines_by_slope = sort_by_slope(lines)?;
        let arrangement = Arrangement::build(lines)?;
        let tmap = TrapezoidalMap::build(&arrangement);
        Ok(HullIndex { arrangement, tmap, lines_by_slope })
    }

    pub fn lines(&self) -> &[Line] {
        self.arrangement.lines()
    }

    pub fn len(&self) -> usize {
        self.arrangement.num_lines()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn trapezoids(&self) -> &TrapezoidalMap {
        &self.tmap
    }

    pub fn lines_by_slope(&self) -> &[u32] {
        &self.lines_by_slope
    }

    pub(crate) fn view(&self) -> LevelView<'_> {
        LevelView { arr: &self.arrangement, tmap: &self.tmap, by_slope: &self.lines_by_slope }
    }

    /// The hull of one point per line. The samples of each round are drawn
    /// from `rng`.
    pub fn query_hull<R: Rng + ?Sized>(
        &self,
        points: &[(Point, u32)],
        rng: &mut R,
    ) -> Result<(ConvexHull, QueryStats)> {
        let pts = assign_points(self.lines(), points)?;
        Ok(self.hull_of_assigned(&pts, rng, |_, _| {}))
    }

    /// Like [`query_hull`](Self::query_hull) but also hands each round's
    /// refined lists and the hull they refine to `inspect`.
    pub fn query_hull_traced<R: Rng + ?Sized>(
        &self,
        points: &[(Point, u32)],
        rng: &mut R,
        inspect: impl FnMut(&ConvexHull, &RefinedConflictLists),
    ) -> Result<(ConvexHull, QueryStats)> {
        let pts = assign_points(self.lines(), points)?;
        Ok(self.hull_of_assigned(&pts, rng, inspect))
    }

    /// `pts[i]` lies on line `i`; already validated.
    pub(crate) fn hull_of_assigned<R: Rng + ?Sized>(
        &self,
        pts: &[Point],
        rng: &mut R,
        mut inspect: impl FnMut(&ConvexHull, &RefinedConflictLists),
    ) -> (ConvexHull, QueryStats) {
        let n = pts.len();
        let mut stats = QueryStats { rounds: 1, ..Default::default() };
        if n <= SMALL_N {
            stats.sort_volume.push(n as u64);
            return (graham_hull(pts), stats);
        }
        let g = build_gradation(n, rng);
        let first: Vec<Point> = g.sample(0).iter().map(|&i| pts[i as usize].clone()).collect();
        stats.sort_volume.push(first.len() as u64);
        let mut hull = graham_hull(&first);
        let mut scratch = RoundScratch::default();
        for k in 1..g.rounds() {
            let fresh: Vec<(u32, Point)> = g.fresh(k).iter().map(|&i| (i, pts[i as usize].clone())).collect();
            let lists = refine_round(self.view(), &hull, &fresh, &mut scratch, &mut stats);
            inspect(&hull, &lists);
            hull = merge_round(&hull, lists, &mut stats);
            stats.rounds += 1;
        }
        (hull, stats)
    }
}
