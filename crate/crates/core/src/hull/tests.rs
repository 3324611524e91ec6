use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gen;
use crate::geom::{orientation, Orientation};
use crate::oracle::{all_edges_hull, brute_hull};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_std(inst: &gen::Instance, seed: u64) -> QueryStats {
    let idx = HullIndex::preprocess(&inst.lines).unwrap();
    let (h, st) = idx.query_hull(inst.points.as_ref().unwrap(), &mut rng(seed)).unwrap();
    assert_eq!(h, brute_hull(&inst.bare_points()), "{} n={} seed={}", inst.generator, inst.n, inst.seed);
    st
}

#[test]
fn triangle_of_three_lines() {
    let lines = vec![Line::new(1, 0), Line::new(-1, 2), Line::new(0, -3)];
    let pts = vec![(Point::from_ints(0, 0), 0), (Point::from_ints(2, 0), 1), (Point::from_ints(1, -3), 2)];
    let idx = HullIndex::preprocess(&lines).unwrap();
    let (h, _) = idx.query_hull(&pts, &mut rng(1)).unwrap();
    assert_eq!(h.len(), 3);
    assert_eq!(h.vertices()[0], Point::from_ints(0, 0));
    assert_eq!(h, all_edges_hull(&[Point::from_ints(0, 0), Point::from_ints(2, 0), Point::from_ints(1, -3)]));
}

#[test]
fn single_line_index() {
    let idx = HullIndex::preprocess(&[Line::new(3, 1)]).unwrap();
    let (h, _) = idx.query_hull(&[(Point::from_ints(1, 4), 0)], &mut rng(0)).unwrap();
    assert_eq!(h.vertices(), &[Point::from_ints(1, 4)]);
}

#[test]
fn rejects_bad_assignments() {
    let lines = vec![Line::new(1, 0), Line::new(-1, 2), Line::new(0, -3)];
    let idx = HullIndex::preprocess(&lines).unwrap();
    let off = vec![(Point::from_ints(0, 1), 0), (Point::from_ints(2, 0), 1), (Point::from_ints(1, -3), 2)];
    assert_eq!(idx.query_hull(&off, &mut rng(0)).unwrap_err(), GeomError::PointNotOnDeclaredLine { index: 0 });
    let dup = vec![(Point::from_ints(0, 0), 0), (Point::from_ints(1, 1), 0), (Point::from_ints(1, -3), 2)];
    assert_eq!(idx.query_hull(&dup, &mut rng(0)).unwrap_err(), GeomError::DuplicateLineAssignment { line: 0 });
    assert!(matches!(
        idx.query_hull(&dup[..2], &mut rng(0)),
        Err(GeomError::AssignmentSizeMismatch { expected: 3, got: 2 })
    ));
    assert!(matches!(
        HullIndex::preprocess(&[Line::new(1, 0), Line::new(1, 2)]),
        Err(GeomError::GeneralPositionViolation { .. })
    ));
}

#[test]
fn random_instances_match_oracle() {
    for seed in 0..12 {
        for n in [17, 40, 64, 100] {
            check_std(&gen::random(n, seed), seed);
        }
    }
}

#[test]
fn convex_position_instances_match_oracle() {
    for seed in 0..8 {
        let inst = gen::convex_position(32, seed);
        check_std(&inst, seed);
        assert_eq!(brute_hull(&inst.bare_points()).len(), 32);
    }
}

#[test]
fn few_hull_instances_match_oracle() {
    for (seed, h) in [(1, 3), (2, 8), (3, 16)] {
        let inst = gen::few_hull(80, h, seed).unwrap();
        assert_eq!(brute_hull(&inst.bare_points()).len(), h);
        check_std(&inst, seed);
    }
}

#[test]
fn refined_lists_are_sound_and_tile_the_slabs() {
    for seed in 0..10 {
        let inst = gen::random(64, 50 + seed);
        let pts = inst.points_by_line().unwrap();
        let idx = HullIndex::preprocess(&inst.lines).unwrap();
        let mut rounds = 0;
        idx.query_hull_traced(inst.points.as_ref().unwrap(), &mut rng(seed), |hull, lists| {
            rounds += 1;
            let up = hull.upper();
            let lo = hull.lower();
            for p in &lists.left {
                assert!(p.x < up[0].x);
            }
            for p in &lists.right {
                assert!(p.x > up[up.len() - 1].x);
            }
            for (j, bucket) in lists.upper.iter().enumerate() {
                for p in bucket {
                    assert!(up[j].x < p.x && p.x < up[j + 1].x);
                    assert_eq!(orientation(&up[j], &up[j + 1], p), Orientation::CounterClockwise);
                }
            }
            for (j, bucket) in lists.lower.iter().enumerate() {
                for p in bucket {
                    assert!(lo[j].x < p.x && p.x < lo[j + 1].x);
                    assert_eq!(orientation(&lo[j + 1], &lo[j], p), Orientation::CounterClockwise);
                }
            }
            // only points outside the hull are bucketed
            let outside = pts
                .iter()
                .filter(|p| {
                    let v = hull.vertices();
                    (0..v.len()).any(|e| orientation(&v[e], &v[(e + 1) % v.len()], p) == Orientation::CounterClockwise)
                })
                .count();
            let bucketed = lists.total();
            assert!(bucketed <= outside);
        })
        .unwrap();
        assert!(rounds >= 1);
    }
}

#[test]
fn conflict_total_matches_brute_count() {
    use crate::oracle::brute_conflicts;
    let inst = gen::random(200, 4);
    let pts = inst.points_by_line().unwrap();
    let idx = HullIndex::preprocess(&inst.lines).unwrap();
    let g = build_gradation(200, &mut rng(8));
    let mut expect = 0u64;
    for k in 1..g.rounds() {
        let prev: Vec<Point> = g.sample(k - 1).iter().map(|&i| pts[i as usize].clone()).collect();
        let fresh: Vec<Point> = g.fresh(k).iter().map(|&i| pts[i as usize].clone()).collect();
        expect += brute_conflicts(&brute_hull(&prev), &fresh).iter().map(|c| c.len() as u64).sum::<u64>();
    }
    let (_, st) = idx.query_hull(inst.points.as_ref().unwrap(), &mut rng(8)).unwrap();
    assert_eq!(st.total_conflicts, expect);
    assert_eq!(st.rounds as usize, g.rounds());
    assert_eq!(st.zone_complexities.len(), g.rounds() - 1);
}

#[test]
fn oblivious_level_sizes() {
    assert_eq!(oblivious_sizes(1024), vec![103, 128, 256, 512, 1024]);
    assert_eq!(oblivious_sizes(4), vec![4]);
}

#[test]
fn oblivious_levels_are_nested_and_exact() {
    for seed in 0..6 {
        let inst = gen::random(64 + 20 * seed as usize, seed);
        let o = ObliviousHullIndex::preprocess(&inst.lines, seed).unwrap();
        for k in 1..o.level_sizes().len() {
            assert!(o.level_lines(k).starts_with(o.level_lines(k - 1)));
        }
        let (h, st) = o.query_hull(inst.points.as_ref().unwrap()).unwrap();
        assert_eq!(h, brute_hull(&inst.bare_points()));
        assert_eq!(st.rounds as usize, o.level_sizes().len());
    }
}

#[test]
fn small_inputs_scan_directly() {
    let inst = gen::random(9, 3);
    let st = check_std(&inst, 0);
    assert_eq!(st.rounds, 1);
    assert!(st.zone_complexities.is_empty());
}
