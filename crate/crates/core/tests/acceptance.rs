//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each check's PASS or FAIL line is always printed; exits nonzero if any
//! check fails.

use std::time::{Duration, Instant};

use lineidx::gen::{self, Instance};
use lineidx::geom::dualize_line;
use lineidx::hull::{HullIndex, ObliviousHullIndex, QueryStats};
use lineidx::levels::{baseline_level, baseline_level_of, heavy_cell_sum, LevelIndex, LevelPath};
use lineidx::oracle::{brute_diameter2, brute_hull, brute_levels, brute_width2};
use lineidx::variants::{diameter, width, OutputSensitiveIndex, TradeoffIndex};
use lineidx::{Line, Point};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn pts(inst: &Instance) -> &[(Point, u32)] {
    inst.points.as_deref().unwrap()
}

fn paired_lines(inst: &Instance) -> Vec<(Line, u32)> {
    inst.lines.iter().cloned().zip(0..).collect()
}

fn hull_kind(i: usize, n: usize, seed: u64) -> Instance {
    match i % 3 {
        0 => gen::random(n, seed),
        1 => gen::convex_position(n, seed),
        _ => gen::few_hull(n, [3, 5, 8][(i / 3) % 3].min(n), seed).unwrap(),
    }
}

fn hull_exactness() -> Outcome {
    let start = Instant::now();
    // the arrangement build dominates at n = 1024, so the large sizes get
    // fewer of the 500 instances
    let plan = [(8, 175), (64, 175), (256, 126), (1024, 24)];
    let (mut total, mut bad) = (0, Vec::new());
    for (n, count) in plan {
        for i in 0..count {
            let seed = 1000 * n as u64 + i as u64;
            let inst = hull_kind(i, n, seed);
            let expect = brute_hull(&inst.bare_points());
            let std = HullIndex::preprocess(&inst.lines).unwrap();
            let mut got = vec![("std", std.query_hull(pts(&inst), &mut rng(seed)).unwrap().0)];
            let obl = ObliviousHullIndex::preprocess(&inst.lines, seed).unwrap();
            got.push(("oblivious", obl.query_hull(pts(&inst)).unwrap().0));
            let root = ((n as f64).sqrt().round() as usize).max(1);
            for m in [1, 4, root, n] {
                let t = TradeoffIndex::preprocess(&inst.lines, m).unwrap();
                got.push(("tradeoff", t.query(pts(&inst), &mut rng(seed)).unwrap().0));
            }
            for (name, h) in got {
                if h != expect {
                    bad.push(format!("{} n={n} seed={seed} {name}", inst.generator));
                }
            }
            total += 1;
        }
    }
    let t = start.elapsed();
    let pass = bad.is_empty() && total == 500 && t < Duration::from_secs(300);
    outcome(pass, format!("{total} instances, {} mismatches {:?}, {:.0}s", bad.len(), bad.first(), t.as_secs_f64()))
}

fn level_exactness() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut paths = [0usize; 3];
    for i in 0..200u64 {
        let n = [16, 32, 64, 96, 128][i as usize % 5];
        let k = (i / 5 % 9) as u32;
        let inst = gen::random(n, 7000 + i);
        let idx = LevelIndex::preprocess(&inst.points_by_line().unwrap(), i % 2 == 1, i).unwrap();
        let (got, st) = idx.query_level(&paired_lines(&inst), k, &mut rng(i)).unwrap();
        paths[match st.path {
            LevelPath::HullDual => 0,
            LevelPath::Baseline => 1,
            LevelPath::Blocks => 2,
        }] += 1;
        let base = baseline_level(&inst.lines, k).unwrap();
        let brute = brute_levels(&inst.lines, k);
        if got != base || base != brute {
            bad.push(format!("n={n} k={k} seed={}", 7000 + i));
        }
    }
    let t = start.elapsed();
    let pass = bad.is_empty() && t < Duration::from_secs(600);
    outcome(
        pass,
        format!(
            "200 instances (hull-dual/baseline/blocks paths {paths:?}), {} mismatches {:?}, {:.0}s",
            bad.len(),
            bad.first(),
            t.as_secs_f64()
        ),
    )
}

fn mean_conflicts_per_n(n: usize) -> f64 {
    let mut sum = 0.0;
    for seed in 0..50 {
        let inst = gen::convex_position(n, 500 + seed);
        let idx = HullIndex::preprocess(&inst.lines).unwrap();
        let (_, st) = idx.query_hull(pts(&inst), &mut rng(seed)).unwrap();
        sum += st.total_conflicts as f64 / n as f64;
    }
    sum / 50.0
}

fn linear_conflicts() -> Outcome {
    let a = mean_conflicts_per_n(512);
    let b = mean_conflicts_per_n(1024);
    let rel = (a - b).abs() / a.max(b);
    outcome(rel < 0.15, format!("convex-position mean conflicts/n: {a:.3} at 512, {b:.3} at 1024, rel diff {rel:.3}"))
}

fn zone_bound() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for (n, seeds) in [(256, 4), (1024, 2), (4096, 1)] {
        for seed in 0..seeds {
            let inst = gen::random(n, 900 + seed);
            let idx = HullIndex::preprocess(&inst.lines).unwrap();
            let (_, st) = idx.query_hull(pts(&inst), &mut rng(seed)).unwrap();
            let r = st.zone_total() as f64 / n as f64;
            worst = worst.max(r);
            rows.push(format!("{n}:{r:.2}"));
        }
    }
    outcome(worst <= 8.0, format!("zone_total/n {} (max {worst:.2})", rows.join(" ")))
}

fn log_star(h: usize) -> u32 {
    let (mut x, mut i) = (h as f64, 0);
    while x > 1.0 {
        x = x.log2();
        i += 1;
    }
    i
}

fn output_sensitive() -> Outcome {
    let n = 1 << 16;
    let mut ok = true;
    let mut rows = Vec::new();
    for (h, seed) in [(3, 31), (8, 32), (16, 33)] {
        let inst = gen::few_hull(n, h, seed).unwrap();
        let idx = OutputSensitiveIndex::preprocess(&inst.lines).unwrap();
        let (hull, st): (_, QueryStats) = idx.query(pts(&inst), &mut rng(seed)).unwrap();
        let round = st.successful_round.unwrap_or(0);
        let wraps = st.round_wraps.last().copied().unwrap_or(0);
        let bound = log_star(h) + 2;
        let good = hull == brute_hull(&inst.bare_points())
            && round as usize <= st.round_wraps.len()
            && wraps == h as u64
            && round <= bound;
        ok &= good;
        rows.push(format!("h={h}: round {round} (bound {bound}), wraps {wraps}"));
    }
    outcome(ok, format!("n={n}; {}", rows.join("; ")))
}

fn fig2_ratio(n: usize) -> (f64, bool) {
    let (mut aware, mut blind, mut exact) = (0u64, 0u64, true);
    for seed in 0..3 {
        for (is_aware, acc) in [(true, &mut aware), (false, &mut blind)] {
            let inst = gen::fig2_adversarial(n, seed, is_aware).unwrap();
            let idx = ObliviousHullIndex::preprocess(&inst.lines, seed).unwrap();
            let (h, st) = idx.query_hull(pts(&inst)).unwrap();
            exact &= h == brute_hull(&inst.bare_points());
            *acc += st.total_conflicts;
        }
    }
    (aware as f64 / blind.max(1) as f64, exact)
}

fn adversarial_sample() -> Outcome {
    let r: Vec<(f64, bool)> = [256, 512, 1024].iter().map(|&n| fig2_ratio(n)).collect();
    let pass = r.iter().all(|x| x.1) && r[2].0 >= 5.0 && r[0].0 < r[1].0 && r[1].0 < r[2].0;
    outcome(pass, format!("seed-aware/oblivious conflicts: {:.1} at 256, {:.1} at 512, {:.1} at 1024", r[0].0, r[1].0, r[2].0))
}

fn lowest_level() -> Outcome {
    let mut bad = 0;
    for seed in 0..100u64 {
        let n = 20 + (seed as usize % 5) * 20;
        let inst = gen::random(n, 3000 + seed);
        let idx = LevelIndex::preprocess(&inst.points_by_line().unwrap(), seed % 2 == 0, seed).unwrap();
        let (c, _) = idx.query_level(&paired_lines(&inst), 0, &mut rng(seed)).unwrap();
        let hull = brute_hull(&inst.lines.iter().map(dualize_line).collect::<Vec<_>>());
        let env: Vec<Point> = c.level_chain(0).iter().map(|e| dualize_line(&inst.lines[e.line as usize])).collect();
        let mut up = hull.upper().to_vec();
        up.reverse();
        if env != up || c != brute_levels(&inst.lines, 0) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 sets, {bad} mismatches"))
}

fn level_vertex_count() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for k in [1u32, 2, 4] {
        let (mut ratio, mut count) = (0.0, 0);
        for d in 0..200u64 {
            let n = [64, 128, 256][d as usize % 3];
            let inst = gen::random(n, 11_000 + 1000 * k as u64 + d);
            let idx = LevelIndex::preprocess(&inst.points_by_line().unwrap(), false, d).unwrap();
            let (_, st) = idx.query_level(&paired_lines(&inst), k, &mut rng(d)).unwrap();
            for r in &st.rounds {
                ratio += r.sample_level_vertices as f64 / r.sample as f64;
                count += 1;
            }
        }
        let mean = ratio / count.max(1) as f64;
        ok &= count > 0 && mean <= 6.0;
        rows.push(format!("k={k}: {mean:.3} over {count} samples"));
    }
    outcome(ok, format!("mean |V_k~(S)|/|S| {}", rows.join(", ")))
}

fn heavy_cells() -> Outcome {
    let (n, k, trials) = (256usize, 2u32, 100u64);
    let betas = [1.0, 2.0, 4.0, 8.0];
    let mut sums = [0.0f64; 4];
    for seed in 0..trials {
        let inst = gen::random(n, 20_000 + seed);
        let idx = LevelIndex::preprocess(&inst.points_by_line().unwrap(), false, seed).unwrap();
        let mut r = rng(seed);
        let kt = r.gen_range(k..=2 * k);
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.shuffle(&mut r);
        let s = &order[..n / 2];
        let prev = baseline_level_of(&inst.lines, s, kt).unwrap();
        let (_, st) = idx.update_level(&prev, &inst.lines, s, &order, kt).unwrap();
        for (i, &b) in betas.iter().enumerate() {
            sums[i] += heavy_cell_sum(&st.cell_conflicts, b, kt, 0.5) / trials as f64;
        }
    }
    let pass = sums.windows(2).all(|w| w[1] <= w[0]) && sums[3] < sums[0];
    outcome(pass, format!("mean heavy-cell sums for beta 1,2,4,8: {sums:.2?} (non-increasing)"))
}

fn calipers() -> Outcome {
    let mut bad = 0;
    for seed in 0..100u64 {
        let inst = if seed % 2 == 0 { gen::random(40, seed) } else { gen::convex_position(24, seed) };
        let p = inst.bare_points();
        let hull = brute_hull(&p);
        let (a, b) = diameter(&hull);
        if a.dist2(&b) != brute_diameter2(&p) || width(&hull).width2 != brute_width2(&p) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 hulls, {bad} mismatches"))
}

fn main() {
    let checks: [Check; 10] = [
        ("hull exactness", hull_exactness),
        ("level exactness", level_exactness),
        ("linear total conflicts", linear_conflicts),
        ("zone of the hull chains", zone_bound),
        ("output-sensitive rounds", output_sensitive),
        ("seed-aware adversary", adversarial_sample),
        ("lowest level vs dual hull", lowest_level),
        ("sample level size", level_vertex_count),
        ("heavy cells", heavy_cells),
        ("calipers", calipers),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in checks.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        println!(
            "{} [{}] {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        println!("failed checks: {failed:?}");
        std::process::exit(1);
    }
}
