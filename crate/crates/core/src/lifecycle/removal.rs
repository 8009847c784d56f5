//! Was a removed TODO addressed, or just deleted?
//!
//! Manual judgments go in an override CSV (`commit_id,file_path,line_no,status`
//! keyed by the introducing event) and always win. Without one:
//!
//! * a cleanup-style commit message with no new code in the hunk that removed
//!   the TODO means the TODO was dropped unresolved;
//! * new code in that hunk, or a commit message that shares at least two
//!   content words with the TODO, means it was resolved;
//! * anything else is counted as resolved with `low_confidence` set.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use super::{LifecycleError, Status, TodoRecord};
use crate::miner::{CommitRecord, FileChange, LineMarker};
use crate::normalize::{is_placeholder, normalize_todo};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    entries: BTreeMap<(String, String, u32), Status>,
}

#[derive(Debug, Deserialize)]
struct OverrideRow {
    commit_id: String,
    file_path: String,
    line_no: u32,
    status: String,
}

impl Overrides {
    pub fn insert(&mut self, commit_id: &str, file_path: &str, line_no: u32, status: Status) {
        self.entries.insert((commit_id.to_string(), file_path.to_string(), line_no), status);
    }

    pub fn get(&self, commit_id: &str, file_path: &str, line_no: u32) -> Option<Status> {
        self.entries.get(&(commit_id.to_string(), file_path.to_string(), line_no)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Self, LifecycleError> {
        let mut out = Overrides::default();
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        for (i, row) in rdr.deserialize::<OverrideRow>().enumerate() {
            // header is line 1
            let line = i + 2;
            let row = row.map_err(|e| LifecycleError::Override { line, message: e.to_string() })?;
            let status: Status = row.status.parse().map_err(|message| LifecycleError::Override { line, message })?;
            if status == Status::Open {
                return Err(LifecycleError::Override {
                    line,
                    message: "status must be Resolved or RemovedUnresolved".into(),
                });
            }
            out.insert(&row.commit_id, &row.file_path, row.line_no, status);
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Self, LifecycleError> {
        Self::from_reader(std::fs::File::open(path)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RemovalLabel {
    pub status: Status,
    pub low_confidence: bool,
}

const CLEANUP_MARKERS: &[&str] = &[
    "cleanup",
    "clean up",
    "clean-up",
    "dead code",
    "remove dead",
    "drop obsolete",
    "obsolete",
    "remove unused",
    "unused",
    "remove todo",
    "todos",
    "tidy",
    "housekeeping",
    "stale",
];

const STOPWORDS: &[&str] = &[
    "the", "and", "for", "with", "this", "that", "when", "once", "then", "than", "from", "into", "onto", "are", "was", "were", "has", "have",
    "had", "not", "but", "can", "should", "would", "could", "will", "its", "our", "all", "any", "some", "also", "just", "only", "use", "todo",
];

pub fn is_cleanup_message(message: &str) -> bool {
    let m = message.to_lowercase();
    CLEANUP_MARKERS.iter().any(|k| m.contains(k))
}

fn stem(word: &str) -> &str {
    for suf in ["ing", "ed", "es", "s", "e"] {
        if let Some(s) = word.strip_suffix(suf) {
            if s.len() >= 3 {
                return s;
            }
        }
    }
    word
}

fn content_stems(text: &str) -> BTreeSet<String> {
    normalize_todo(text)
        .tokens
        .iter()
        .filter(|t| !is_placeholder(t) && t.len() >= 3 && !STOPWORDS.contains(&t.as_str()) && !t.chars().all(|c| c.is_ascii_digit()))
        .map(|t| stem(t).to_string())
        .collect()
}

/// Content words the TODO and the commit message have in common.
pub fn shared_task_words(todo_raw: &str, message: &str) -> BTreeSet<String> {
    let a = content_stems(todo_raw);
    let b = content_stems(message);
    a.intersection(&b).cloned().collect()
}

fn is_code(text: &str) -> bool {
    let t = text.trim();
    let comment = t.starts_with("//") || t.starts_with("/*") || t.starts_with('*');
    !comment && t.chars().any(|c| c.is_alphanumeric())
}

/// Whether the hunk that removed the TODO line also added code.
pub fn code_added_near(elim_commit: &CommitRecord, file_path: &str, line_no: u32) -> bool {
    let Some(fd) = elim_commit.file_diffs.iter().find(|f| f.old_path == file_path) else {
        return false;
    };
    if fd.change == FileChange::Deleted {
        return false;
    }
    let Some(h) = fd.hunk_for_removed(line_no) else {
        return false;
    };
    fd.hunks[h].lines.iter().any(|l| l.marker == LineMarker::Added && is_code(&l.text))
}

pub fn classify_removal(record: &TodoRecord, elim_commit: Option<&CommitRecord>, overrides: &Overrides) -> Result<RemovalLabel, LifecycleError> {
    let elim = record.elim.as_ref().ok_or(LifecycleError::NoElimination)?;
    let intro = &record.intro;
    if let Some(status) = overrides.get(&intro.commit_id, &intro.file_path, intro.line_no) {
        return Ok(RemovalLabel {
            status,
            low_confidence: false,
        });
    }
    let Some(commit) = elim_commit else {
        return Ok(RemovalLabel {
            status: Status::Resolved,
            low_confidence: true,
        });
    };
    let code = code_added_near(commit, &elim.file_path, elim.line_no);
    if is_cleanup_message(&commit.message) && !code {
        return Ok(RemovalLabel {
            status: Status::RemovedUnresolved,
            low_confidence: false,
        });
    }
    let shared = shared_task_words(&intro.raw_comment, &commit.message).len();
    Ok(RemovalLabel {
        status: Status::Resolved,
        low_confidence: !(code || shared >= 2),
    })
}

/// Applies [`classify_removal`] to every removed record.
pub fn label_removals(records: &mut [TodoRecord], commits: &[CommitRecord], overrides: &Overrides) -> Result<(), LifecycleError> {
    let by_id: HashMap<&str, &CommitRecord> = commits.iter().map(|c| (c.commit_id.as_str(), c)).collect();
    for rec in records.iter_mut() {
        let Some(elim) = &rec.elim else { continue };
        let commit = by_id.get(elim.commit_id.as_str()).copied();
        let label = classify_removal(rec, commit, overrides)?;
        rec.status = label.status;
        rec.low_confidence = label.low_confidence;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let text = "commit_id,file_path,line_no,status\nabc, A.java ,3,RemovedUnresolved\ndef,B.java,1,resolved\n";
        let o = Overrides::from_reader(text.as_bytes()).unwrap();
        assert_eq!(o.get("abc", "A.java", 3), Some(Status::RemovedUnresolved));
        assert_eq!(o.get("def", "B.java", 1), Some(Status::Resolved));
        let bad = "commit_id,file_path,line_no,status\nabc,A.java,x,Resolved\n";
        assert!(matches!(Overrides::from_reader(bad.as_bytes()), Err(LifecycleError::Override { line: 2, .. })));
    }

    #[test]
    fn stems_match_inflections() {
        let shared = shared_task_words(
            "TODO: remove try/catch block when compacting encrypted Realms is supported",
            "Removing the restriction of compacting encrypted Realm files.",
        );
        assert!(shared.contains("compact") && shared.contains("encrypt") && shared.contains("realm"), "{shared:?}");
    }

    #[test]
    fn cleanup_messages() {
        assert!(is_cleanup_message("Cleanup dead code"));
        assert!(is_cleanup_message("remove unused imports"));
        assert!(!is_cleanup_message("Fix nested generics parsing"));
    }
}
