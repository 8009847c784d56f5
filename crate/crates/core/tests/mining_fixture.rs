mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use todolens_core::classify::bridge::validate_pair;
use todolens_core::classify::{Form, Quality, Verdict, VerdictSource};
use todolens_core::miner::{filter_events, merge_commit_ids, mine_repository, walk_history, EventKind, MiningConfig, TodoEvent};
use todolens_core::normalize::normalize_todo;

#[test]
fn fixture_events() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = common::build_tiny_repo(tmp.path());
    let mined = mine_repository(&repo, "tiny-repo", &MiningConfig::default()).unwrap();
    let d = mined.diagnostics;
    assert_eq!((d.commits, d.merge_commits), (12, 1));
    assert_eq!((d.events_found, d.dropped_merge, d.dropped_duplicate, d.dropped_non_english), (18, 1, 2, 0));
    assert_eq!(mined.events.len(), 15);

    let intro = mined.events.iter().filter(|e| e.kind == EventKind::Introduced).count();
    assert_eq!(intro, 9);

    // the TODO inside a string literal is not a comment
    assert!(mined.events.iter().all(|e| !e.raw_comment.contains('"')));
    // a block comment spanning lines is one event
    let cache = mined.events.iter().find(|e| e.raw_comment.contains("evict")).unwrap();
    assert_eq!(normalize_todo(&cache.raw_comment).joined(), "todo evict entries when the cache exceeds its size limit");

    let merge = common::commit_by_subject(&repo, "Merge branch 'feature'");
    assert!(mined.events.iter().all(|e| e.commit_id != merge));
    let dup = common::commit_by_subject(&repo, "Guard compaction of encrypted caches");
    assert_eq!(mined.events.iter().filter(|e| e.commit_id == dup).count(), 1);

    // commit order is topological and times are the pinned dates
    let ids: Vec<&str> = mined.commits.iter().map(|c| c.commit_id.as_str()).collect();
    let parents = common::parent_map(&repo);
    for (i, c) in ids.iter().enumerate() {
        for p in &parents[*c] {
            assert!(ids[..i].contains(&p.as_str()), "{c} before parent {p}");
        }
    }
    assert_eq!(mined.commits[0].author_time, 1_614_592_800);
}

#[test]
fn filters_can_be_switched_off() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = common::build_tiny_repo(tmp.path());
    let cfg = MiningConfig {
        drop_merge_commits: false,
        dedup: false,
        ..MiningConfig::default()
    };
    let mined = mine_repository(&repo, "tiny-repo", &cfg).unwrap();
    assert_eq!(mined.events.len(), 18);
}

#[test]
fn deterministic_commit_ids() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ra = walk_history(&common::build_tiny_repo(a.path()), &MiningConfig::default()).unwrap();
    let rb = walk_history(&common::build_tiny_repo(b.path()), &MiningConfig::default()).unwrap();
    assert_eq!(ra, rb);
    assert!(ra[0].commit_id.starts_with("1d5550f"));
    assert_eq!(merge_commit_ids(&ra).len(), 1);
}

#[test]
fn not_a_repository() {
    let tmp = tempfile::tempdir().unwrap();
    assert!(mine_repository(tmp.path(), "x", &MiningConfig::default()).is_err());
}

fn arb_event() -> impl Strategy<Value = TodoEvent> {
    (
        prop_oneof![Just(EventKind::Introduced), Just(EventKind::Eliminated)],
        0usize..4,
        prop_oneof![
            Just("// TODO fix this".to_string()),
            Just("// TODO  fix   this".to_string()),
            Just("// TODO fix that".to_string()),
            Just("// TODO 修复这个问题".to_string()),
            "// TODO [a-z ]{0,12}",
        ],
        1u32..40,
    )
        .prop_map(|(kind, c, raw, line_no)| TodoEvent {
            kind,
            repo_id: "r".into(),
            commit_id: format!("c{c}"),
            file_path: "A.java".into(),
            raw_comment: raw,
            line_no,
            author_time: c as i64,
        })
}

proptest! {
    #[test]
    fn filter_is_idempotent(events in proptest::collection::vec(arb_event(), 0..40), merge in 0usize..4) {
        let merges: BTreeSet<String> = [format!("c{merge}")].into();
        let cfg = MiningConfig::default();
        let once = filter_events(events.clone(), &merges, &cfg);
        prop_assert_eq!(filter_events(once.clone(), &merges, &cfg), once.clone());
        // output keeps input order
        let mut it = events.iter();
        for e in &once {
            prop_assert!(it.any(|x| x == e));
        }
        prop_assert!(once.iter().all(|e| !merges.contains(&e.commit_id)));
        let keys: BTreeSet<_> = once.iter().map(|e| (e.kind, normalize_todo(&e.raw_comment).joined(), e.commit_id.clone())).collect();
        prop_assert_eq!(keys.len(), once.len());
    }

    #[test]
    fn verdict_pairs_sum_to_one(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let total = a + b;
        prop_assume!(total > 0.0);
        let fp = validate_pair("form", &[a / total, b / total]).unwrap();
        let qp = validate_pair("quality", &[b / total, a / total]).unwrap();
        prop_assert!((fp[0] + fp[1] - 1.0).abs() <= 1e-9);
        let v = Verdict::from_probs(fp, qp, VerdictSource::Bridge);
        prop_assert!((v.quality_probs[0] + v.quality_probs[1] - 1.0).abs() <= 1e-9);
        prop_assert_eq!(v.form == Form::Task, fp[0] > fp[1]);
        prop_assert_eq!(v.quality == Quality::Good, qp[0] > qp[1]);
    }

    #[test]
    fn off_sum_pairs_rejected(a in 0.0f64..=1.0, excess in 1e-4f64..0.5) {
        let b = 1.0 - a + excess;
        prop_assume!(b <= 1.0);
        prop_assert!(validate_pair("form", &[a, b]).is_err());
    }
}
