//! Instrumented runs of every query mode against the oracles.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::gen::{self, Instance};
use crate::hull::{ConvexHull, QueryStats};
use crate::io::{Mode, StoredIndex};
use crate::levels::{baseline_level, LevelComplex, LevelStats};
use crate::oracle::brute_hull;
use crate::{Line, Point};

/// Column order of the benchmark CSV. Part of the file contract.
pub const CSV_COLUMNS: [&str; 11] = [
    "generator",
    "n",
    "k",
    "mode",
    "seed",
    "total_conflicts",
    "zone_total",
    "rounds",
    "wraps",
    "wall_time_ns",
    "oracle_match",
];

/// One (instance, mode) run. Field order matches [`CSV_COLUMNS`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub generator: String,
    pub n: usize,
    pub k: Option<usize>,
    pub mode: String,
    pub seed: u64,
    pub total_conflicts: u64,
    pub zone_total: u64,
    pub rounds: u64,
    pub wraps: u64,
    pub wall_time_ns: u64,
    pub oracle_match: bool,
}

impl BenchRecord {
    /// Whether two runs agree on everything but the wall time.
    pub fn same_counters(&self, o: &BenchRecord) -> bool {
        BenchRecord { wall_time_ns: 0, ..self.clone() } == BenchRecord { wall_time_ns: 0, ..o.clone() }
    }
}

/// Output of a hull query, as written by `lineidx query`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullOutput {
    pub mode: String,
    pub vertices: Vec<Point>,
    pub stats: QueryStats,
}

/// Output of a level query, as written by `lineidx levels-query`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelOutput {
    pub level: LevelComplex,
    pub stats: LevelStats,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Answers a hull query with any hull-mode index.
pub fn query_hull(index: &StoredIndex, points: &[(Point, u32)]) -> Result<(ConvexHull, QueryStats)> {
    match index {
        StoredIndex::Std { seed, index } => index.query_hull(points, &mut rng(*seed)),
        StoredIndex::Oblivious { index } => index.query_hull(points),
        StoredIndex::Tradeoff { seed, index } => index.query(points, &mut rng(*seed)),
        StoredIndex::OutSens { seed, index } => index.query(points, &mut rng(*seed)),
        StoredIndex::Levels { .. } => Err(GeomError::InvalidParameter("a levels index answers level queries".into())),
    }
}

/// Answers a level query with a levels-mode index.
pub fn query_level(index: &StoredIndex, lines: &[(Line, u32)], k: u32) -> Result<(LevelComplex, LevelStats)> {
    match index {
        StoredIndex::Levels { seed, index } => index.query_level(lines, k, &mut rng(*seed)),
        _ => Err(GeomError::InvalidParameter("a hull index answers hull queries".into())),
    }
}

/// The lines of `inst` paired with the points they pass through.
pub fn lines_with_points(inst: &Instance) -> Result<Vec<(Line, u32)>> {
    if inst.points.is_none() {
        return Err(GeomError::InvalidParameter("instance has no points".into()));
    }
    Ok(inst.lines.iter().cloned().zip(0..).collect())
}

fn points_of(inst: &Instance) -> Result<&[(Point, u32)]> {
    inst.points.as_deref().ok_or_else(|| GeomError::InvalidParameter("instance has no points".into()))
}

/// Preprocesses `inst` for `mode`, times one query and checks it against
/// the oracle: the brute-force hull, or for levels the plane sweep.
/// `k` is the level for the levels mode.
pub fn run_cell(inst: &Instance, mode: Mode, k: u32, seed: u64) -> Result<BenchRecord> {
    let pts = points_of(inst)?;
    let bare: Vec<Point> = pts.iter().map(|(p, _)| p.clone()).collect();
    let index = StoredIndex::build(mode, &inst.lines, Some(&bare), seed)?;
    let mut rec = BenchRecord {
        generator: inst.generator.clone(),
        n: inst.n,
        k: inst.k,
        mode: mode.to_string(),
        seed,
        total_conflicts: 0,
        zone_total: 0,
        rounds: 0,
        wraps: 0,
        wall_time_ns: 0,
        oracle_match: false,
    };
    if mode == Mode::Levels {
        let lines = lines_with_points(inst)?;
        let t = Instant::now();
        let (level, st) = query_level(&index, &lines, k)?;
        rec.wall_time_ns = t.elapsed().as_nanos() as u64;
        rec.k = Some(k as usize);
        rec.total_conflicts = st.rounds.iter().map(|r| r.block_conflicts()).sum();
        rec.zone_total = st.rounds.iter().map(|r| r.zone_complexity).sum();
        rec.rounds = st.rounds.len() as u64;
        rec.oracle_match = level == baseline_level(&inst.lines, k)?;
    } else {
        let t = Instant::now();
        let (hull, st) = query_hull(&index, pts)?;
        rec.wall_time_ns = t.elapsed().as_nanos() as u64;
        rec.total_conflicts = st.total_conflicts;
        rec.zone_total = st.zone_total();
        rec.rounds = st.rounds as u64;
        rec.wraps = st.wraps;
        rec.oracle_match = hull == brute_hull(&bare);
    }
    Ok(rec)
}

/// Result of an oracle sweep over generated instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub trials: u64,
    pub matches: u64,
    pub mismatches: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.matches == self.trials
    }
}

/// The hull modes checked per verification trial.
pub fn verify_modes(n: usize) -> Vec<Mode> {
    let mut m = vec![Mode::Std, Mode::Oblivious, Mode::OutSens];
    let mut groups = vec![1, 4, Mode::Tradeoff(None).groups(n), n];
    groups.retain(|&g| g >= 1 && g <= n);
    groups.dedup();
    m.extend(groups.into_iter().map(|g| Mode::Tradeoff(Some(g))));
    m
}

/// Runs `trials` instances of `kind` per size through every hull mode, and
/// through the levels mode when `level_k` is set. A trial matches when all
/// modes agree with their oracle. Trial `t` uses seed `seed + t`.
pub fn verify(kind: &str, sizes: &[usize], trials: u64, h: Option<usize>, level_k: Option<u32>, seed: u64) -> Result<VerifyReport> {
    let mut rep = VerifyReport::default();
    for &n in sizes {
        for t in 0..trials {
            let s = seed.wrapping_add(t);
            let inst = gen::generate(kind, n, h, s)?;
            let mut modes = verify_modes(n);
            if level_k.is_some() {
                modes.push(Mode::Levels);
            }
            let mut all = true;
            for mode in modes {
                let rec = run_cell(&inst, mode, level_k.unwrap_or(0), s)?;
                if !rec.oracle_match {
                    all = false;
                    rep.mismatches.push(format!("{kind} n={n} seed={s} mode={mode}"));
                }
            }
            rep.trials += 1;
            rep.matches += all as u64;
        }
    }
    Ok(rep)
}

/// The cells of a benchmark run: every kind, size, trial and mode.
#[derive(Clone, Debug)]
pub struct BenchPlan {
    pub kinds: Vec<String>,
    pub sizes: Vec<usize>,
    pub trials: u64,
    pub modes: Vec<Mode>,
    /// Hull size for few-hull instances.
    pub h: Option<usize>,
    /// Level for the levels mode.
    pub k: u32,
    pub seed: u64,
}

/// Runs every cell of `plan` in order and hands each record to `sink`.
/// Trial `t` uses seed `seed + t` for both the instance and the index.
pub fn bench(plan: &BenchPlan, mut sink: impl FnMut(BenchRecord) -> Result<()>) -> Result<()> {
    for kind in &plan.kinds {
        for &n in &plan.sizes {
            for t in 0..plan.trials {
                let s = plan.seed.wrapping_add(t);
                let inst = gen::generate(kind, n, plan.h, s)?;
                for &mode in &plan.modes {
                    sink(run_cell(&inst, mode, plan.k, s)?)?;
                }
            }
        }
    }
    Ok(())
}
