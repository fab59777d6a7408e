use std::fs;

use eprlab::equimodular::{equimodular_by_inverse, equimodular_report};
use eprlab::search::{
    self, checkpoint, decode, encode, enumerate, EnumerationCursor, Evaluator, Mode, Property, PropertySet,
    Restriction, ScanConfig, ScanReport, Shard,
};
use eprlab::{epr, Error};

#[test]
fn enumeration_sizes_and_round_trip() {
    for n in 1..=5 {
        let all: Vec<_> = enumerate(n, Shard::FULL).unwrap().collect();
        assert_eq!(all.len() as u128, 1u128 << (n * (n + 1) / 2));
        for (mask, m) in all.iter().step_by(7) {
            assert!(m.is_symmetric() && m.is_zero_one());
            assert_eq!(encode(m).unwrap(), *mask);
            assert_eq!(&decode(*mask, n).unwrap(), m);
        }
        let zd = EnumerationCursor::new(n, Restriction::ZeroDiagonal, Shard::FULL).unwrap();
        let zd: Vec<_> = zd.collect();
        assert_eq!(zd.len() as u128, 1u128 << (n * (n - 1) / 2));
        assert!(zd.iter().all(|(_, m)| m.has_zero_diagonal()));
    }
}

#[test]
fn shards_partition_the_space() {
    for n in 1..=5 {
        for count in [1, 2, 3, 8, 13] {
            let mut masks = Vec::new();
            for i in 0..count {
                masks.extend(enumerate(n, Shard::new(i, count).unwrap()).unwrap().map(|(m, _)| m));
            }
            let expected: Vec<u128> = (0..1u128 << (n * (n + 1) / 2)).collect();
            assert_eq!(masks, expected, "n = {n}, {count} shards");
        }
    }
    let s = Shard::new(3, 8).unwrap();
    assert_eq!(s.range(64), (24, 32));
    assert_eq!(s.range(10), (3, 5));
    assert!(Shard::new(8, 8).is_err());
}

#[test]
fn sharded_scans_merge_to_the_full_scan() {
    for n in 3..=5 {
        let full = search::scan_conjecture(n, Shard::FULL).unwrap();
        let parts: Vec<ScanReport> = (0..5).map(|i| search::scan_conjecture(n, Shard::new(i, 5).unwrap()).unwrap()).collect();
        assert_eq!(ScanReport::merge_all(parts).unwrap(), full);
    }
    let a = search::scan_conjecture(5, Shard::new(0, 3).unwrap()).unwrap();
    let c = search::scan_conjecture(5, Shard::new(2, 3).unwrap()).unwrap();
    assert!(a.merge(c).is_err());
}

#[test]
fn pipeline_agrees_with_full_sequences() {
    for n in 3..=5 {
        let mut ev = Evaluator::new(n);
        for (_, m) in enumerate(n, Shard::FULL).unwrap() {
            let e = ev.evaluate(m.as_slice());
            let s = epr(&m).unwrap();
            assert_eq!(e.nonsingular, s.ends_with("A"));
            assert_eq!(e.ends_naa, s.ends_with("NAA"), "{s}");
            if e.ends_naa && n >= 5 {
                assert_eq!(eprlab::epr::word(&ev.tail5(m.as_slice())), s.word());
            }
        }
    }
}

#[test]
fn cofactor_and_inverse_equimodularity_agree() {
    for n in 1..=4usize {
        let mut ev = Evaluator::new(n);
        let mut buf = vec![0i64; n * n];
        for bits in 0u64..1 << (n * n) {
            for (k, v) in buf.iter_mut().enumerate() {
                *v = (bits >> k & 1) as i64;
            }
            let m = eprlab::IntMatrix::new(n, buf.clone()).unwrap();
            let fast = ev.equimodular(&buf).equimodular;
            let by_inverse = equimodular_by_inverse(&m);
            assert_eq!(fast, by_inverse.is_some(), "{}", m.to_text());
            let report = equimodular_report(&m);
            assert_eq!(report.equimodular, fast);
            assert_eq!(report.alpha, by_inverse);
        }
    }
}

#[test]
fn naa_enders_split_into_two_tails() {
    for n in [5, 6] {
        let r = search::scan_conjecture(n, Shard::FULL).unwrap();
        assert_eq!(r.count("ends_NAA"), r.count("tail_NSNAA") + r.count("tail_SSNAA"));
    }
}

#[test]
fn properties_scan_is_clean_at_five() {
    let r = search::scan_properties(5, PropertySet::all(), Restriction::All).unwrap();
    assert!(r.is_clean(), "{}", r.to_json());
    assert_eq!(r.count("nonsingular"), 18596);
    assert_eq!(r.count("battery_checked"), 192);
    assert_eq!(r.count("graph_checked"), 1024);
    let zd = search::scan_properties(5, PropertySet::only([Property::Graph]), Restriction::ZeroDiagonal).unwrap();
    assert_eq!(zd.total_examined, 1024);
    assert_eq!(zd.count("graph_checked"), 1024);
}

#[test]
fn stop_and_resume_equals_a_straight_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck");
    let straight = search::scan_conjecture(5, Shard::FULL).unwrap();

    let mut cfg = ScanConfig::new(5, Mode::Conjecture);
    cfg.checkpoint = Some(path.clone());
    cfg.checkpoint_every = 1000;
    cfg.stop_after = Some(5000);
    let first = search::scan(&cfg).unwrap();
    assert!(!first.complete);
    assert_eq!(first.total_examined, 5000);
    let (header, saved) = checkpoint::load(&path).unwrap();
    assert_eq!(header.mask_cursor, 5000);
    assert_eq!(saved, first);

    cfg.resume = true;
    let second = search::scan(&cfg).unwrap();
    assert!(!second.complete);
    assert_eq!(second.resumed_from.as_deref(), Some("5000"));
    cfg.stop_after = None;
    let done = search::scan(&cfg).unwrap();
    assert_eq!(done, straight);
    // resuming a finished scan is a no-op
    assert_eq!(search::scan(&cfg).unwrap(), straight);
}

#[test]
fn multi_job_interruption_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let straight = search::scan_properties(4, PropertySet::all(), Restriction::All).unwrap();
    let mut cfg = ScanConfig::new(4, Mode::Properties);
    cfg.jobs = 3;
    cfg.checkpoint = Some(dir.path().join("p"));
    cfg.stop_after = Some(100);
    let partial = search::scan(&cfg).unwrap();
    assert!(!partial.complete);
    assert_eq!(partial.total_examined, 300);
    for j in 0..3 {
        assert!(checkpoint::job_path(&dir.path().join("p"), j, 3).exists());
    }
    cfg.resume = true;
    cfg.stop_after = None;
    assert_eq!(search::scan(&cfg).unwrap(), straight);
}

#[test]
fn mismatched_checkpoints_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck");
    let mut cfg = ScanConfig::new(5, Mode::Conjecture);
    cfg.checkpoint = Some(path.clone());
    cfg.stop_after = Some(100);
    search::scan(&cfg).unwrap();

    let mut other = ScanConfig::new(6, Mode::Conjecture);
    other.checkpoint = Some(path.clone());
    other.resume = true;
    assert!(matches!(search::scan(&other), Err(Error::Checkpoint(_))));

    let mut other_shard = cfg.clone();
    other_shard.resume = true;
    other_shard.shard = Shard::new(1, 2).unwrap();
    assert!(matches!(search::scan(&other_shard), Err(Error::Checkpoint(_))));

    let mut props = ScanConfig::new(5, Mode::Properties);
    props.checkpoint = Some(path.clone());
    props.resume = true;
    assert!(matches!(search::scan(&props), Err(Error::Checkpoint(_))));

    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replacen("\"total_examined\":100", "\"total_examined\":99", 1)).unwrap();
    let mut resume = cfg.clone();
    resume.resume = true;
    assert!(matches!(search::scan(&resume), Err(Error::Checkpoint(_))));

    fs::write(&path, "not a checkpoint\n").unwrap();
    assert!(search::scan(&resume).is_err());
}

#[test]
fn report_json_round_trips() {
    let mut cfg = ScanConfig::new(5, Mode::Conjecture);
    cfg.canonical = true;
    let r = search::scan(&cfg).unwrap();
    let back: ScanReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let classes = r.canonical_classes.as_ref().unwrap();
    assert_eq!(classes.iter().map(|c| c.count).sum::<u64>(), 12);
    // the twelve labeled 5-cycles are one class
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].tail, "NSNAA");
}

#[test]
fn invalid_configurations() {
    assert!(search::scan_conjecture(2, Shard::FULL).is_err());
    assert!(search::scan_conjecture(14, Shard::FULL).is_err());
    let mut cfg = ScanConfig::new(9, Mode::Conjecture);
    cfg.canonical = true;
    assert!(search::scan(&cfg).is_err());
    let mut cfg = ScanConfig::new(4, Mode::Conjecture);
    cfg.jobs = 0;
    assert!(search::scan(&cfg).is_err());
}
