use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{Line, Point};
use crate::hull::{assign_points, lower_scan, upper_scan, ConvexHull, HullIndex, QueryStats};

/// The lines split into `m` groups of consecutive ids, each with its own
/// hull index. The first `n mod m` groups hold one extra line.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TradeoffIndex {
    lines: Vec<Line>,
    starts: Vec<usize>,
    groups: Vec<HullIndex>,
}

impl TradeoffIndex {
    pub fn preprocess(lines: &[Line], m: usize) -> Result<Self> {
        let n = lines.len();
        if m == 0 || m > n {
            return Err(GeomError::InvalidParameter(format!("group count {m} outside 1..={n}")));
        }
        crate::geom::sort_by_slope(lines)?;
        let (q, r) = (n / m, n % m);
        let mut starts = Vec::with_capacity(m + 1);
        let mut at = 0;
        for g in 0..m {
            starts.push(at);
            at += q + usize::from(g < r);
        }
        starts.push(n);
        let groups = starts.windows(2).map(|w| HullIndex::preprocess(&lines[w[0]..w[1]])).collect::<Result<_>>()?;
        Ok(TradeoffIndex { lines: lines.to_vec(), starts, groups })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Line id range of group `g`.
    pub fn group_range(&self, g: usize) -> std::ops::Range<usize> {
        self.starts[g]..self.starts[g + 1]
    }

    /// Hull of each group's points, in group order.
    pub fn group_hulls<R: Rng + ?Sized>(
        &self,
        points: &[(Point, u32)],
        rng: &mut R,
    ) -> Result<(Vec<ConvexHull>, QueryStats)> {
        let pts = assign_points(&self.lines, points)?;
        Ok(self.group_hulls_assigned(&pts, rng))
    }

    pub(crate) fn group_hulls_assigned<R: Rng + ?Sized>(
        &self,
        pts: &[Point],
        rng: &mut R,
    ) -> (Vec<ConvexHull>, QueryStats) {
        let mut stats = QueryStats::default();
        let hulls = self
            .groups
            .iter()
            .enumerate()
            .map(|(g, idx)| {
                let (h, st) = idx.hull_of_assigned(&pts[self.group_range(g)], rng, |_, _| {});
                stats.absorb(&st);
                h
            })
            .collect();
        (hulls, stats)
    }

    pub fn query<R: Rng + ?Sized>(&self, points: &[(Point, u32)], rng: &mut R) -> Result<(ConvexHull, QueryStats)> {
        let (hulls, mut stats) = self.group_hulls(points, rng)?;
        if hulls.len() == 1 {
            return Ok((hulls.into_iter().next().unwrap(), stats));
        }
        let uppers: Vec<&[Point]> = hulls.iter().map(|h| h.upper()).collect();
        let lowers: Vec<Vec<Point>> = hulls.iter().map(|h| h.lower()).collect();
        let up = merge_by_x(&uppers);
        let lo = merge_by_x(&lowers.iter().map(Vec::as_slice).collect::<Vec<_>>());
        stats.sort_volume.push((up.len() + lo.len()) as u64);
        Ok((ConvexHull::from_chains(&upper_scan(&up), &lower_scan(&lo)), stats))
    }
}

/// k-way merge of x-sorted runs through a heap of cursors.
fn merge_by_x(runs: &[&[Point]]) -> Vec<Point> {
    let mut heap: BinaryHeap<Reverse<(&Point, usize, usize)>> =
        runs.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(g, r)| Reverse((&r[0], g, 0))).collect();
    let mut out = Vec::with_capacity(runs.iter().map(|r| r.len()).sum());
    while let Some(Reverse((p, g, i))) = heap.pop() {
        out.push(p.clone());
        if let Some(q) = runs[g].get(i + 1) {
            heap.push(Reverse((q, g, i + 1)));
        }
    }
    out
}
