mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use todolens_core::classify::{Category, Verdict, VerdictSource};
use todolens_core::lifecycle::metrics::{HIGH_QUALITY, LOW_QUALITY, OVERALL};
use todolens_core::lifecycle::{compute_metrics, interval_days, CommitGraph, CommitNode, GroupBy, LifecycleMetrics, Status, TodoRecord};
use todolens_core::miner::{EventKind, TodoEvent};

fn event(kind: EventKind, time: i64) -> TodoEvent {
    TodoEvent {
        kind,
        repo_id: "r".into(),
        commit_id: format!("{time}"),
        file_path: "A.java".into(),
        raw_comment: "// TODO x".into(),
        line_no: 1,
        author_time: time,
    }
}

fn record(cat: Category, status: Status, days: f64, commits: u32) -> TodoRecord {
    let mut r = TodoRecord::open(event(EventKind::Introduced, 0));
    r.verdict = Some(Verdict::certain(cat.form(), cat.quality(), VerdictSource::Rules));
    if status != Status::Open {
        r.elim = Some(event(EventKind::Eliminated, (days * 86_400.0) as i64));
        r.status = status;
        r.time_interval_days = Some(days);
        r.commits_between = Some(commits);
    }
    r
}

fn row<'a>(rows: &'a [LifecycleMetrics], name: &str) -> &'a LifecycleMetrics {
    rows.iter().find(|m| m.category == name).unwrap()
}

/// (total, removed, resolved, unresolved, resolved/total, unresolved/removed,
/// mean days, mean commits) worked out by hand.
type Expected = (usize, usize, usize, usize, (usize, usize), Option<(usize, usize)>, Option<f64>, Option<f64>);

fn check(m: &LifecycleMetrics, e: Expected) {
    assert_eq!((m.total, m.removed, m.resolved, m.unresolved), (e.0, e.1, e.2, e.3), "{}", m.category);
    assert_eq!(m.resolved_pct, Some(e.4 .0 as f64 / e.4 .1 as f64), "{}", m.category);
    assert_eq!(m.unresolved_pct, e.5.map(|(a, b)| a as f64 / b as f64), "{}", m.category);
    for (got, want) in [(m.mean_time_interval_days, e.6), (m.mean_commits, e.7)] {
        match (got, want) {
            (Some(g), Some(w)) => assert!((g - w).abs() <= 1e-9, "{}: {g} vs {w}", m.category),
            (g, w) => assert_eq!(g, w, "{}", m.category),
        }
    }
}

#[test]
fn twenty_record_fixture() {
    use Category::*;
    use Status::*;
    let mut rs = vec![
        record(TaskGood, Resolved, 1.0, 1),
        record(TaskGood, Resolved, 2.0, 3),
        record(TaskGood, Resolved, 4.0, 5),
        record(TaskGood, RemovedUnresolved, 30.0, 9),
        record(TaskBad, Resolved, 10.0, 7),
        record(TaskBad, RemovedUnresolved, 3.0, 2),
    ];
    for (cat, n) in [(TaskGood, 4), (TaskBad, 3), (NoticeGood, 4), (NoticeBad, 3)] {
        rs.extend((0..n).map(|_| record(cat, Open, 0.0, 0)));
    }
    assert_eq!(rs.len(), 20);
    let rows = compute_metrics(&rs, GroupBy::Category);

    check(row(&rows, "Task Good"), (8, 4, 3, 1, (3, 8), Some((1, 4)), Some(7.0 / 3.0), Some(3.0)));
    check(row(&rows, "Task Bad"), (5, 2, 1, 1, (1, 5), Some((1, 2)), Some(10.0), Some(7.0)));
    check(row(&rows, "Notice Good"), (4, 0, 0, 0, (0, 4), None, None, None));
    check(row(&rows, "Notice Bad"), (3, 0, 0, 0, (0, 3), None, None, None));
    check(row(&rows, HIGH_QUALITY), (12, 4, 3, 1, (3, 12), Some((1, 4)), Some(7.0 / 3.0), Some(3.0)));
    check(row(&rows, LOW_QUALITY), (8, 2, 1, 1, (1, 8), Some((1, 2)), Some(10.0), Some(7.0)));
    check(row(&rows, OVERALL), (20, 6, 4, 2, (4, 20), Some((2, 6)), Some(17.0 / 4.0), Some(4.0)));
    assert_eq!(row(&rows, OVERALL).resolved_pct, Some(0.2));
}

#[test]
fn one_day_interval() {
    assert_eq!(interval_days(1_000, 1_000 + 86_400), 1.0);
    let rows = compute_metrics(&[record(Category::TaskGood, Status::Resolved, 1.0, 1)], GroupBy::Category);
    assert_eq!(row(&rows, OVERALL).mean_time_interval_days, Some(1.0));
}

#[test]
fn per_repository_rows() {
    let mut a = record(Category::TaskGood, Status::Resolved, 2.0, 1);
    a.intro.repo_id = "a".into();
    let mut b = record(Category::NoticeBad, Status::Open, 0.0, 0);
    b.intro.repo_id = "b".into();
    let rows = compute_metrics(&[a, b], GroupBy::Repository);
    assert_eq!(rows.len(), 14);
    assert_eq!(rows[0].repo_id.as_deref(), Some("a"));
    assert_eq!(rows[7].repo_id.as_deref(), Some("b"));
    assert_eq!(rows[13].total, 1);
}

// ---- commits_between against exhaustive path enumeration ----

fn all_path_lengths(parents: &BTreeMap<String, Vec<String>>, from: &str, to: &str, depth: usize, out: &mut Vec<usize>) {
    if from == to {
        out.push(depth);
        return;
    }
    for p in &parents[from] {
        all_path_lengths(parents, p, to, depth + 1, out);
    }
}

fn brute_force(parents: &BTreeMap<String, Vec<String>>, intro: &str, elim: &str) -> Option<u32> {
    let mut lens = Vec::new();
    all_path_lengths(parents, elim, intro, 0, &mut lens);
    lens.into_iter().filter(|&l| l > 0).min().map(|l| l as u32)
}

fn graph_of(parents: &BTreeMap<String, Vec<String>>) -> CommitGraph {
    CommitGraph::new(parents.iter().map(|(id, ps)| {
        (
            id.clone(),
            CommitNode {
                author_time: 0,
                parent_ids: ps.clone(),
            },
        )
    }))
    .unwrap()
}

fn assert_matches_brute_force(parents: &BTreeMap<String, Vec<String>>) -> usize {
    let g = graph_of(parents);
    let mut checked = 0;
    for a in parents.keys() {
        for b in parents.keys() {
            match brute_force(parents, a, b) {
                Some(n) => {
                    assert_eq!(g.commits_between(a, b).unwrap(), n, "{a} -> {b}");
                    checked += 1;
                }
                None => assert!(g.commits_between(a, b).is_err(), "{a} -> {b} should have no path"),
            }
        }
    }
    checked
}

fn dag(edges: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
    edges.iter().map(|(id, ps)| (id.to_string(), ps.iter().map(|p| p.to_string()).collect())).collect()
}

#[test]
fn small_dags() {
    let chain = dag(&[("A", &[]), ("B", &["A"]), ("C", &["B"])]);
    assert_eq!(graph_of(&chain).commits_between("A", "C").unwrap(), 2);
    assert_eq!(graph_of(&chain).commits_between("B", "C").unwrap(), 1);
    assert_matches_brute_force(&chain);
    let diamond = dag(&[("A", &[]), ("B", &["A"]), ("C", &["A"]), ("D", &["B", "C"])]);
    assert_eq!(graph_of(&diamond).commits_between("A", "D").unwrap(), 2);
    assert_matches_brute_force(&diamond);
    // a long and a short route to the same ancestor
    let uneven = dag(&[("A", &[]), ("B", &["A"]), ("C", &["B"]), ("D", &["C"]), ("E", &["D", "A"])]);
    assert_eq!(graph_of(&uneven).commits_between("A", "E").unwrap(), 1);
    assert_matches_brute_force(&uneven);
}

#[test]
fn fixture_dag() {
    let tmp = tempfile::tempdir().unwrap();
    let repo = common::build_tiny_repo(tmp.path());
    let parents = common::parent_map(&repo);
    assert_eq!(parents.len(), 12);
    let checked = assert_matches_brute_force(&parents);
    // 12 commits, one side branch of length 1: every pair but the two
    // branch tips is ordered
    assert_eq!(checked, 12 * 11 / 2 - 1);
}

fn random_dag() -> impl Strategy<Value = BTreeMap<String, Vec<String>>> {
    (2usize..10).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(any::<prop::sample::Index>(), 1..3), n - 1).prop_map(move |choices| {
            let mut m = BTreeMap::new();
            m.insert("n00".to_string(), Vec::new());
            for (i, picks) in choices.iter().enumerate() {
                let node = i + 1;
                let mut ps: Vec<String> = picks.iter().map(|ix| format!("n{:02}", ix.index(node))).collect();
                ps.dedup();
                ps.sort();
                ps.dedup();
                m.insert(format!("n{node:02}"), ps);
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn random_dags_match_brute_force(parents in random_dag()) {
        assert_matches_brute_force(&parents);
    }

    #[test]
    fn metric_invariants(spec in proptest::collection::vec((0usize..4, 0usize..3, 0u32..500, 1u32..50), 0..60)) {
        let rs: Vec<TodoRecord> = spec
            .iter()
            .map(|&(c, s, d, k)| record(Category::ALL[c], [Status::Open, Status::Resolved, Status::RemovedUnresolved][s], f64::from(d) / 4.0, k))
            .collect();
        let rows = compute_metrics(&rs, GroupBy::Category);
        if rs.is_empty() {
            prop_assert!(rows.is_empty());
            return Ok(());
        }
        for m in &rows {
            prop_assert_eq!(m.resolved + m.unresolved, m.removed);
            prop_assert!(m.removed <= m.total);
            prop_assert_eq!(m.unresolved_pct.is_none(), m.removed == 0);
            prop_assert_eq!(m.mean_commits.is_none(), m.resolved == 0);
        }
        let sum = |names: &[&str]| {
            names.iter().map(|n| row(&rows, n)).fold((0, 0, 0, 0), |a, m| (a.0 + m.total, a.1 + m.removed, a.2 + m.resolved, a.3 + m.unresolved))
        };
        let counts = |m: &LifecycleMetrics| (m.total, m.removed, m.resolved, m.unresolved);
        prop_assert_eq!(counts(row(&rows, HIGH_QUALITY)), sum(&["Task Good", "Notice Good"]));
        prop_assert_eq!(counts(row(&rows, LOW_QUALITY)), sum(&["Task Bad", "Notice Bad"]));
        prop_assert_eq!(counts(row(&rows, OVERALL)), sum(&["Task Good", "Task Bad", "Notice Good", "Notice Bad"]));
    }
}
