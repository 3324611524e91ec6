use lineidx::gen::{self, Instance};
use lineidx::hull::{HullIndex, ObliviousHullIndex};
use lineidx::oracle::brute_hull;
use lineidx::{ExactCoord, Point};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_valid(inst: &Instance) {
    let pts = inst.points.as_ref().unwrap();
    assert_eq!(pts.len(), inst.lines.len());
    for (i, (p, l)) in pts.iter().enumerate() {
        assert_eq!(*l as usize, i);
        assert!(inst.lines[i].contains(p));
    }
    // preprocessing checks slopes and concurrency
    HullIndex::preprocess(&inst.lines).unwrap();
}

#[test]
fn sorting_reduction_places_values_on_their_rows() {
    let inst = gen::sorting_reduction_from(&[3, 1, 4, 2], 0).unwrap();
    assert_valid(&inst);
    let expect = [(3, 1), (1, 2), (4, 3), (2, 4)];
    for (i, (x, y)) in expect.into_iter().enumerate() {
        assert_eq!(inst.points.as_ref().unwrap()[i].0, Point::from_ints(x, y));
        let l = &inst.lines[i];
        assert!(!l.slope.is_zero());
        // within the x-range the line stays near y = i + 1
        for t in 1..=4 {
            let dy = &l.eval(&ExactCoord::from_int(t)) - &ExactCoord::from_int(y);
            assert!(dy.abs() < ExactCoord::from_ratio(1, 4));
        }
    }
    assert!(gen::sorting_reduction_from(&[1, 1], 0).is_err());
}

#[test]
fn reductions_are_valid_and_solvable() {
    for seed in 0..4 {
        for inst in [gen::sorting_reduction(100, seed).unwrap(), gen::fuzzy_sep(100, seed).unwrap()] {
            assert_valid(&inst);
            let idx = HullIndex::preprocess(&inst.lines).unwrap();
            let (h, _) = idx.query_hull(inst.points.as_ref().unwrap(), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            assert_eq!(h, brute_hull(&inst.bare_points()));
        }
    }
}

#[test]
fn fuzzy_rows_are_spaced_by_one_over_n() {
    let inst = gen::fuzzy_sep(10, 3).unwrap();
    for (i, (p, _)) in inst.points.as_ref().unwrap().iter().enumerate() {
        assert_eq!(p.y, ExactCoord::from_ratio(i as i64 + 1, 10));
        assert!(p.x.is_integer());
    }
}

#[test]
fn convex_position_puts_every_point_on_the_hull() {
    let inst = gen::convex_position(8, 1);
    assert_eq!(brute_hull(&inst.bare_points()).len(), 8);
}

#[test]
fn generators_are_deterministic() {
    for kind in gen::KINDS {
        let a = gen::generate(kind, 40, Some(5), 9).unwrap();
        let b = gen::generate(kind, 40, Some(5), 9).unwrap();
        assert_eq!(a, b, "{kind}");
        assert_eq!(a.n, 40);
        assert_valid(&a);
    }
    assert!(gen::generate("nope", 10, None, 0).is_err());
}

#[test]
fn fig2_pair_at_64_shows_the_biased_sample() {
    // frozen: seed-aware / oblivious conflict ratio at n = 64 for seed 7
    let seed = 7;
    let mut totals = Vec::new();
    for aware in [true, false] {
        let inst = gen::fig2_adversarial(64, seed, aware).unwrap();
        assert_valid(&inst);
        let idx = ObliviousHullIndex::preprocess(&inst.lines, seed).unwrap();
        let (h, st) = idx.query_hull(inst.points.as_ref().unwrap()).unwrap();
        assert_eq!(h, brute_hull(&inst.bare_points()));
        totals.push(st.total_conflicts);
    }
    println!("fig2 n=64 conflicts aware={} oblivious={}", totals[0], totals[1]);
    assert_eq!(totals, vec![601, 47]);
    assert!(totals[0] >= 5 * totals[1]);
}
