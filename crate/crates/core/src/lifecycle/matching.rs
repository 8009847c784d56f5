//! Pairing introductions with eliminations.
//!
//! An elimination is eligible for an introduction when
//!
//! 1. both comments normalize to the same token sequence,
//! 2. both come from the same repository,
//! 3. both refer to the same file path,
//! 4. the introduction is not later than the elimination and its commit is a
//!    proper ancestor of the eliminating commit.
//!
//! Introductions are visited in (author_time, commit_id, file_path, line_no)
//! order and each takes the earliest unused eligible elimination, ordered by
//! (author_time, commit_id, line_no).

use std::collections::{BTreeMap, HashSet};

use super::{interval_days, CommitGraph, LifecycleError, Status, TodoRecord};
use crate::miner::TodoEvent;
use crate::normalize::normalize_todo;

/// Rule 1 key.
pub fn comment_key(raw_comment: &str) -> String {
    normalize_todo(raw_comment).joined()
}

/// Rules 1 to 4 for a single pair.
pub fn eligible(intro: &TodoEvent, elim: &TodoEvent, graph: &CommitGraph) -> Result<bool, LifecycleError> {
    Ok(comment_key(&intro.raw_comment) == comment_key(&elim.raw_comment)
        && intro.repo_id == elim.repo_id
        && intro.file_path == elim.file_path
        && intro.author_time <= elim.author_time
        && graph.is_proper_ancestor(&intro.commit_id, &elim.commit_id)?)
}

pub fn match_pairs(introduced: &[TodoEvent], eliminated: &[TodoEvent], graph: &CommitGraph) -> Result<Vec<TodoRecord>, LifecycleError> {
    for e in introduced.iter().chain(eliminated) {
        if !graph.contains(&e.commit_id) {
            return Err(LifecycleError::UnknownCommit(e.commit_id.clone()));
        }
    }
    // candidates grouped by (repo, file, key), each group sorted by preference
    let mut pool: BTreeMap<(&str, &str, String), Vec<usize>> = BTreeMap::new();
    for (i, e) in eliminated.iter().enumerate() {
        pool.entry((&e.repo_id, &e.file_path, comment_key(&e.raw_comment))).or_default().push(i);
    }
    for v in pool.values_mut() {
        v.sort_by(|&a, &b| {
            let (x, y) = (&eliminated[a], &eliminated[b]);
            (x.author_time, &x.commit_id, x.line_no).cmp(&(y.author_time, &y.commit_id, y.line_no))
        });
    }

    let mut order: Vec<usize> = (0..introduced.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&introduced[a], &introduced[b]);
        (x.author_time, &x.commit_id, &x.file_path, x.line_no).cmp(&(y.author_time, &y.commit_id, &y.file_path, y.line_no))
    });

    let mut used: HashSet<usize> = HashSet::new();
    let mut records = Vec::with_capacity(introduced.len());
    for i in order {
        let intro = &introduced[i];
        let key = (intro.repo_id.as_str(), intro.file_path.as_str(), comment_key(&intro.raw_comment));
        let mut chosen = None;
        for &j in pool.get(&key).map(Vec::as_slice).unwrap_or_default() {
            if used.contains(&j) {
                continue;
            }
            let elim = &eliminated[j];
            if intro.author_time <= elim.author_time && graph.is_proper_ancestor(&intro.commit_id, &elim.commit_id)? {
                chosen = Some(j);
                break;
            }
        }
        let mut rec = TodoRecord::open(intro.clone());
        if let Some(j) = chosen {
            used.insert(j);
            let elim = &eliminated[j];
            rec.time_interval_days = Some(interval_days(intro.author_time, elim.author_time));
            rec.commits_between = Some(graph.commits_between(&intro.commit_id, &elim.commit_id)?);
            rec.elim = Some(elim.clone());
            // refined later by removal labeling
            rec.status = Status::Resolved;
            rec.low_confidence = true;
        }
        records.push(rec);
    }
    Ok(records)
}
