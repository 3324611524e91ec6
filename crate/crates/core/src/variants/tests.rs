use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gen;
use crate::geom::Point;
use crate::hull::ConvexHull;
use crate::oracle::{brute_diameter2, brute_hull, brute_width2};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_hull(seed: u64, n: usize) -> ConvexHull {
    let mut r = rng(seed);
    let pts: Vec<Point> =
        (0..n).map(|_| Point::from_ints(r.gen_range(-500..=500), r.gen_range(-500..=500))).collect();
    brute_hull(&pts)
}

#[test]
fn calipers_match_brute_force() {
    for seed in 0..60 {
        let h = random_hull(seed, 3 + seed as usize % 40);
        let (a, b) = diameter(&h);
        assert_eq!(a.dist2(&b), brute_diameter2(h.vertices()), "seed {seed}");
        let s = width(&h);
        assert_eq!(s.width2, brute_width2(h.vertices()), "seed {seed}");
    }
}

#[test]
fn calipers_on_rectangles_and_tiny_hulls() {
    let rect = brute_hull(&[Point::from_ints(0, 0), Point::from_ints(6, 0), Point::from_ints(6, 2), Point::from_ints(0, 2)]);
    assert_eq!(width(&rect).width2, 4.into());
    assert_eq!(diameter(&rect).0.dist2(&diameter(&rect).1), 40.into());
    let seg = brute_hull(&[Point::from_ints(0, 0), Point::from_ints(3, 4)]);
    assert_eq!(width(&seg).width2, 0.into());
    let (a, b) = diameter(&seg);
    assert_eq!(a.dist2(&b), 25.into());
    let one = brute_hull(&[Point::from_ints(1, 1)]);
    assert_eq!(diameter(&one).0, Point::from_ints(1, 1));
}

#[test]
fn tangent_search_matches_linear_scan() {
    let mut r = rng(7);
    for seed in 0..200 {
        let h = random_hull(1000 + seed, 3 + seed as usize % 30);
        let v = h.vertices();
        for _ in 0..10 {
            let p = Point::from_ints(r.gen_range(-2000..=2000), r.gen_range(-2000..=2000));
            let inside = (0..v.len()).all(|e| {
                crate::geom::orientation(&v[e], &v[(e + 1) % v.len()], &p) != crate::geom::Orientation::CounterClockwise
            });
            if inside {
                continue;
            }
            assert_eq!(v[tangent(&p, v)], v[tangent_linear(&p, v)], "seed {seed} p {p:?}");
        }
    }
}

#[test]
fn tradeoff_matches_oracle_for_all_group_counts() {
    for seed in 0..4 {
        let inst = gen::random(100, seed);
        let expect = brute_hull(&inst.bare_points());
        for m in [1, 3, 4, 10, 100] {
            let idx = TradeoffIndex::preprocess(&inst.lines, m).unwrap();
            assert_eq!(idx.group_count(), m);
            let (h, _) = idx.query(inst.points.as_ref().unwrap(), &mut rng(seed)).unwrap();
            assert_eq!(h, expect, "seed {seed} m {m}");
        }
    }
    assert!(TradeoffIndex::preprocess(&gen::random(5, 0).lines, 6).is_err());
}

#[test]
fn group_sizes_differ_by_at_most_one() {
    let idx = TradeoffIndex::preprocess(&gen::random(23, 1).lines, 5).unwrap();
    let sizes: Vec<usize> = (0..5).map(|g| idx.group_range(g).len()).collect();
    assert_eq!(sizes, vec![5, 5, 5, 4, 4]);
}

#[test]
fn wrapping_group_hulls_recovers_the_hull() {
    for seed in 0..6 {
        let inst = gen::convex_position(60, seed);
        let idx = TradeoffIndex::preprocess(&inst.lines, 7).unwrap();
        let (groups, _) = idx.group_hulls(inst.points.as_ref().unwrap(), &mut rng(seed)).unwrap();
        let (h, steps) = wrap_groups(&groups, 1000).unwrap();
        assert_eq!(h.unwrap(), brute_hull(&inst.bare_points()));
        assert_eq!(steps, 60);
        let (none, steps) = wrap_groups(&groups, 59).unwrap();
        assert!(none.is_none());
        assert_eq!(steps, 59);
    }
}

#[test]
fn wrong_side_candidate_is_reported() {
    let groups = vec![brute_hull(&[Point::from_ints(0, 0)]), brute_hull(&[Point::from_ints(-1, 5)])];
    let err = gift_wrap_query(&groups, (0, 0), (&Point::from_ints(0, -1), &Point::from_ints(0, 0))).unwrap_err();
    assert_eq!(err, crate::GeomError::SideViolation { index: 1 });
}

#[test]
fn guess_schedule() {
    assert_eq!(guess_sequence(1024), vec![1, 2, 4]);
    assert_eq!(guess_sequence(65536), vec![1, 2, 4, 16]);
    assert_eq!(groups_for(1024, 1), 1024);
    assert_eq!(groups_for(1024, 2), 512);
    assert_eq!(groups_for(1024, 4), 128);
    assert_eq!(groups_for(65536, 16), 1024);
}

#[test]
fn output_sensitive_stops_at_the_right_guess() {
    for (h, seed) in [(3, 1), (4, 2)] {
        let inst = gen::few_hull(200, h, seed).unwrap();
        let idx = OutputSensitiveIndex::preprocess(&inst.lines).unwrap();
        let (hull, st) = idx.query(inst.points.as_ref().unwrap(), &mut rng(seed)).unwrap();
        assert_eq!(hull, brute_hull(&inst.bare_points()));
        assert_eq!(st.successful_round, Some(3));
        assert_eq!(*st.round_wraps.last().unwrap(), h as u64);
    }
    // more hull vertices than any guess: the full index answers
    let inst = gen::convex_position(40, 3);
    let idx = OutputSensitiveIndex::preprocess(&inst.lines).unwrap();
    let (hull, st) = idx.query(inst.points.as_ref().unwrap(), &mut rng(0)).unwrap();
    assert_eq!(hull, brute_hull(&inst.bare_points()));
    assert_eq!(st.successful_round, Some(idx.schedule().len() as u32 + 1));
}
