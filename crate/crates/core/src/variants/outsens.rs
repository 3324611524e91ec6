use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{sort_by_slope, Line, Point};
use crate::hull::{assign_points, ConvexHull, HullIndex, QueryStats};

use super::giftwrap::wrap_groups;
use super::tradeoff::TradeoffIndex;

/// Output-size guesses 1, 2, 4, 16, 65536 (`h_{i+1} = 2^{h_i}`), kept while
/// they do not exceed `log2 n`.
pub fn guess_sequence(n: usize) -> Vec<u64> {
    let cap = (n.max(2) as f64).log2();
    let mut out = vec![1u64];
    let mut h = 2u64;
    while (h as f64) <= cap {
        out.push(h);
        if h >= 64 {
            break;
        }
        h = 1u64 << h;
    }
    out
}

/// Group count for a guess `h`: about `n / (h log h)`, clamped to `1..=n`.
pub fn groups_for(n: usize, h: u64) -> usize {
    if h <= 1 {
        return n.max(1);
    }
    let m = n as f64 / (h as f64 * (h as f64).log2());
    (m.round() as usize).clamp(1, n.max(1))
}

#[derive(Debug, Serialize, Deserialize)]
struct Round {
    h: u64,
    groups: TradeoffIndex,
}

/// One grouped index per output-size guess. A query wraps the union of the
/// group hulls for at most `h` steps and moves to the next guess when the
/// wrap does not close. Once the guesses exceed `log2 n` the full index,
/// built on first use, answers instead.
#[derive(Debug, Serialize, Deserialize)]
pub struct OutputSensitiveIndex {
    lines: Vec<Line>,
    rounds: Vec<Round>,
    #[serde(skip)]
    fallback: OnceLock<HullIndex>,
}

impl OutputSensitiveIndex {
    pub fn preprocess(lines: &[Line]) -> Result<Self> {
        sort_by_slope(lines)?;
        let n = lines.len();
        let rounds = guess_sequence(n)
            .into_iter()
            .map(|h| Ok(Round { h, groups: TradeoffIndex::preprocess(lines, groups_for(n, h))? }))
            .collect::<Result<_>>()?;
        Ok(OutputSensitiveIndex { lines: lines.to_vec(), rounds, fallback: OnceLock::new() })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// `(h, m)` for every round.
    pub fn schedule(&self) -> Vec<(u64, usize)> {
        self.rounds.iter().map(|r| (r.h, r.groups.group_count())).collect()
    }

    pub fn query<R: Rng + ?Sized>(&self, points: &[(Point, u32)], rng: &mut R) -> Result<(ConvexHull, QueryStats)> {
        let pts = assign_points(&self.lines, points)?;
        let mut stats = QueryStats::default();
        for (i, r) in self.rounds.iter().enumerate() {
            let (hulls, st) = r.groups.group_hulls_assigned(&pts, rng);
            stats.absorb(&st);
            let (hull, advances) = wrap_groups(&hulls, r.h)?;
            stats.wraps += advances;
            stats.round_wraps.push(advances);
            if let Some(hull) = hull {
                stats.successful_round = Some(i as u32 + 1);
                return Ok((hull, stats));
            }
        }
        let full = self.fallback.get_or_init(|| HullIndex::preprocess(&self.lines).expect("lines validated at preprocessing"));
        let (hull, st) = full.hull_of_assigned(&pts, rng, |_, _| {});
        stats.absorb(&st);
        stats.successful_round = Some(self.rounds.len() as u32 + 1);
        Ok((hull, stats))
    }
}
