use lineidx::bench::{query_hull, query_level, run_cell, BenchRecord};
use lineidx::gen;
use lineidx::io::{FormatError, Mode, StoredIndex, FORMAT_VERSION, MAGIC};
use lineidx::ExactCoord;

#[test]
fn instances_round_trip_through_json() {
    for kind in gen::KINDS {
        let inst = gen::generate(kind, 30, Some(4), 2).unwrap();
        let text = serde_json::to_string(&inst).unwrap();
        assert_eq!(serde_json::from_str::<gen::Instance>(&text).unwrap(), inst);
    }
    let frac = ExactCoord::from_ratio(-6, 4);
    assert_eq!(serde_json::to_value(&frac).unwrap(), serde_json::json!({"n": "-3", "d": "2"}));
}

#[test]
fn every_index_mode_round_trips() {
    let inst = gen::random(50, 8);
    let pts = inst.points.as_deref().unwrap();
    for mode in ["std", "oblivious", "tradeoff:5", "tradeoff:sqrt", "outsens", "levels"] {
        let mode: Mode = mode.parse().unwrap();
        let idx = StoredIndex::build(mode, &inst.lines, Some(&inst.bare_points()), 4).unwrap();
        let bytes = idx.to_bytes();
        assert!(bytes.starts_with(MAGIC));
        let back = StoredIndex::from_bytes(&bytes).unwrap();
        assert_eq!(back.to_bytes(), bytes, "{mode}");
        if mode == Mode::Levels {
            let lines: Vec<_> = inst.lines.iter().cloned().zip(0..).collect();
            assert_eq!(query_level(&idx, &lines, 2).unwrap(), query_level(&back, &lines, 2).unwrap());
        } else {
            assert_eq!(query_hull(&idx, pts).unwrap(), query_hull(&back, pts).unwrap());
        }
    }
}

#[test]
fn foreign_blobs_are_rejected() {
    let inst = gen::random(20, 1);
    let mut bytes = StoredIndex::build(Mode::Std, &inst.lines, None, 0).unwrap().to_bytes();
    bytes[8..12].copy_from_slice(&(FORMAT_VERSION + 1).to_le_bytes());
    assert!(matches!(StoredIndex::from_bytes(&bytes), Err(FormatError::VersionMismatch { .. })));
    assert!(matches!(StoredIndex::from_bytes(b"LINEIDY\0\x01\0\0\0"), Err(FormatError::BadMagic)));
    bytes[8..12].copy_from_slice(&FORMAT_VERSION.to_le_bytes());
    bytes.truncate(40);
    assert!(matches!(StoredIndex::from_bytes(&bytes), Err(FormatError::Decode(_))));
}

#[test]
fn mode_names_parse_back() {
    for m in [Mode::Std, Mode::Oblivious, Mode::Tradeoff(Some(3)), Mode::Tradeoff(None), Mode::OutSens, Mode::Levels] {
        assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
    }
    assert!("tradeoff:x".parse::<Mode>().is_err());
    assert_eq!(Mode::Tradeoff(None).groups(100), 10);
}

#[test]
fn bench_counters_repeat_exactly() {
    let inst = gen::few_hull(200, 4, 6).unwrap();
    for mode in [Mode::Std, Mode::Oblivious, Mode::Tradeoff(Some(7)), Mode::OutSens, Mode::Levels] {
        let a: BenchRecord = run_cell(&inst, mode, 2, 11).unwrap();
        let b = run_cell(&inst, mode, 2, 11).unwrap();
        assert!(a.same_counters(&b), "{mode}");
        assert!(a.oracle_match, "{mode}");
    }
}
