//! Walks a repository's default-branch history and turns its diffs into TODO
//! introduction and elimination events.

mod comments;
pub mod diff;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use comments::contains_todo;
pub use diff::{parse_unified_diff, DiffDiagnostics, DiffLine, FileChange, FileDiff, Hunk, LineMarker};

use crate::normalize::normalize_todo;

#[derive(Debug, Error)]
pub enum MiningError {
    #[error("not a git repository: {0}")]
    NotARepository(PathBuf),
    #[error("`git {command}` failed: {stderr}")]
    Git { command: String, stderr: String },
    #[error("could not run git: {0}")]
    Io(#[from] std::io::Error),
    #[error("unexpected git output: {0}")]
    Parse(String),
    #[error("invalid mining config: {0}")]
    Config(String),
}

pub type Result<T, E = MiningError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MiningConfig {
    pub drop_merge_commits: bool,
    pub drop_non_english: bool,
    pub english_ascii_ratio_threshold: f64,
    pub dedup: bool,
    pub todo_case_sensitive: bool,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig {
            drop_merge_commits: true,
            drop_non_english: true,
            english_ascii_ratio_threshold: 0.9,
            dedup: true,
            todo_case_sensitive: true,
        }
    }
}

impl MiningConfig {
    pub fn validate(&self) -> Result<()> {
        let t = self.english_ascii_ratio_threshold;
        if !(0.0..=1.0).contains(&t) {
            return Err(MiningError::Config(format!("english_ascii_ratio_threshold {t} outside [0, 1]")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitRecord {
    pub commit_id: String,
    pub parent_ids: Vec<String>,
    pub author_time: i64,
    pub message: String,
    pub file_diffs: Vec<FileDiff>,
}

impl CommitRecord {
    pub fn is_merge(&self) -> bool {
        self.parent_ids.len() >= 2
    }

    /// The file diff an event refers to: new path for introductions, old path
    /// for eliminations.
    pub fn file_for(&self, kind: EventKind, path: &str) -> Option<&FileDiff> {
        self.file_diffs.iter().find(|f| match kind {
            EventKind::Introduced => f.new_path == path,
            EventKind::Eliminated => f.old_path == path,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EventKind {
    Introduced,
    Eliminated,
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EventKind::Introduced => "Introduced",
            EventKind::Eliminated => "Eliminated",
        })
    }
}

/// One TODO comment added or removed by a commit. Field order is the JSONL
/// column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TodoEvent {
    pub kind: EventKind,
    pub repo_id: String,
    pub commit_id: String,
    pub file_path: String,
    pub raw_comment: String,
    pub line_no: u32,
    pub author_time: i64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiningDiagnostics {
    pub commits: usize,
    pub merge_commits: usize,
    pub malformed_diff_lines: usize,
    pub binary_files: usize,
    pub events_found: usize,
    pub dropped_merge: usize,
    pub dropped_non_english: usize,
    pub dropped_duplicate: usize,
}

impl fmt::Display for MiningDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "commits={} merges={} malformed_diff_lines={} binary_files={} events={} dropped_merge={} dropped_non_english={} dropped_duplicate={}",
            self.commits,
            self.merge_commits,
            self.malformed_diff_lines,
            self.binary_files,
            self.events_found,
            self.dropped_merge,
            self.dropped_non_english,
            self.dropped_duplicate
        )
    }
}

fn git(repo: &Path, args: &[&str]) -> Result<std::process::Output> {
    Ok(Command::new("git")
        .arg("-C")
        .arg(repo)
        .args(args)
        .env("GIT_CONFIG_NOSYSTEM", "1")
        .env("LC_ALL", "C")
        .output()?)
}

fn git_ok(repo: &Path, args: &[&str]) -> Result<String> {
    let out = git(repo, args)?;
    if !out.status.success() {
        return Err(MiningError::Git {
            command: args.join(" "),
            stderr: String::from_utf8_lossy(&out.stderr).trim().to_string(),
        });
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ensure_repository(repo_path: &Path) -> Result<PathBuf> {
    let not_repo = || MiningError::NotARepository(repo_path.to_path_buf());
    let canonical = repo_path.canonicalize().map_err(|_| not_repo())?;
    if !canonical.is_dir() {
        return Err(not_repo());
    }
    let out = git(&canonical, &["rev-parse", "--show-toplevel"])?;
    if !out.status.success() {
        return Err(not_repo());
    }
    let top = PathBuf::from(String::from_utf8_lossy(&out.stdout).trim());
    // A plain directory nested inside some other checkout is still not a repository.
    if top.canonicalize().map_err(|_| not_repo())? != canonical {
        return Err(not_repo());
    }
    Ok(canonical)
}

const LOG_FORMAT: &str = "--format=%x00%H%x1f%P%x1f%at%x1f%B%x1e";

/// Reads every commit reachable from `HEAD`, ordered parents-first with ties
/// broken by ascending commit id. Each record carries its diff against the
/// first parent (or the empty tree for root commits).
pub fn walk_history(repo_path: &Path, config: &MiningConfig) -> Result<Vec<CommitRecord>> {
    walk_history_with_diagnostics(repo_path, config).map(|(c, _)| c)
}

pub fn walk_history_with_diagnostics(repo_path: &Path, config: &MiningConfig) -> Result<(Vec<CommitRecord>, DiffDiagnostics)> {
    config.validate()?;
    let repo = ensure_repository(repo_path)?;
    let head = git(&repo, &["rev-parse", "--verify", "-q", "HEAD^{commit}"])?;
    if !head.status.success() {
        return Ok((Vec::new(), DiffDiagnostics::default()));
    }
    let raw = git_ok(
        &repo,
        &[
            "-c",
            "core.quotepath=false",
            "-c",
            "log.showroot=true",
            "-c",
            "log.showsignature=false",
            "-c",
            "diff.mnemonicprefix=false",
            "-c",
            "diff.noprefix=false",
            "log",
            "HEAD",
            "--no-color",
            "--no-ext-diff",
            "--no-textconv",
            "--encoding=UTF-8",
            "-p",
            "-M",
            "--diff-merges=first-parent",
            "--src-prefix=a/",
            "--dst-prefix=b/",
            LOG_FORMAT,
        ],
    )?;
    let (commits, diag) = parse_log(&raw)?;
    Ok((topological_order(commits)?, diag))
}

fn parse_log(raw: &str) -> Result<(Vec<CommitRecord>, DiffDiagnostics)> {
    let mut commits = Vec::new();
    let mut diag = DiffDiagnostics::default();
    for chunk in raw.split('\0').filter(|c| !c.trim().is_empty()) {
        let (header, body) = chunk
            .split_once('\x1e')
            .ok_or_else(|| MiningError::Parse("commit header without terminator".into()))?;
        let mut fields = header.splitn(4, '\x1f');
        let (Some(id), Some(parents), Some(time), Some(message)) = (fields.next(), fields.next(), fields.next(), fields.next()) else {
            return Err(MiningError::Parse(format!("short commit header: {header:?}")));
        };
        let author_time = time
            .trim()
            .parse()
            .map_err(|_| MiningError::Parse(format!("bad author time {time:?} for {id}")))?;
        let (file_diffs, d) = diff::parse_unified_diff(body);
        diag.absorb(d);
        commits.push(CommitRecord {
            commit_id: id.trim().to_string(),
            parent_ids: parents.split_whitespace().map(str::to_string).collect(),
            author_time,
            message: message.trim_end().to_string(),
            file_diffs,
        });
    }
    Ok((commits, diag))
}

/// Kahn's algorithm with a sorted ready set.
pub fn topological_order(commits: Vec<CommitRecord>) -> Result<Vec<CommitRecord>> {
    let mut by_id: BTreeMap<String, CommitRecord> = BTreeMap::new();
    for c in commits {
        by_id.insert(c.commit_id.clone(), c);
    }
    let mut pending: BTreeMap<&str, usize> = BTreeMap::new();
    let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for c in by_id.values() {
        let known: Vec<&str> = c.parent_ids.iter().map(String::as_str).filter(|p| by_id.contains_key(*p)).collect();
        pending.insert(&c.commit_id, known.len());
        for p in known {
            children.entry(p).or_default().push(&c.commit_id);
        }
    }
    let mut ready: BTreeSet<&str> = pending.iter().filter(|(_, &n)| n == 0).map(|(&id, _)| id).collect();
    let mut order: Vec<String> = Vec::with_capacity(by_id.len());
    while let Some(id) = ready.pop_first() {
        order.push(id.to_string());
        for &child in children.get(id).map(Vec::as_slice).unwrap_or_default() {
            let n = pending.get_mut(child).expect("child registered");
            *n -= 1;
            if *n == 0 {
                ready.insert(child);
            }
        }
    }
    if order.len() != by_id.len() {
        return Err(MiningError::Parse("commit graph contains a cycle".into()));
    }
    Ok(order.into_iter().map(|id| by_id.remove(&id).expect("id from map")).collect())
}

/// Events for the TODO comments a commit adds and removes.
pub fn extract_todo_events(commit: &CommitRecord, repo_id: &str, config: &MiningConfig) -> Vec<TodoEvent> {
    let mut events = Vec::new();
    for fd in &commit.file_diffs {
        if fd.binary {
            continue;
        }
        for (kind, marker, path) in [
            (EventKind::Introduced, LineMarker::Added, &fd.new_path),
            (EventKind::Eliminated, LineMarker::Removed, &fd.old_path),
        ] {
            for found in comments::scan_file(fd, marker, config.todo_case_sensitive) {
                events.push(TodoEvent {
                    kind,
                    repo_id: repo_id.to_string(),
                    commit_id: commit.commit_id.clone(),
                    file_path: path.clone(),
                    raw_comment: found.raw_comment,
                    line_no: found.line_no,
                    author_time: commit.author_time,
                });
            }
        }
    }
    events
}

/// Share of ASCII letters among alphabetic characters; 1.0 when the text has
/// no letters at all.
pub fn ascii_letter_ratio(text: &str) -> f64 {
    let (ascii, alpha) = text.chars().filter(|c| c.is_alphabetic()).fold((0usize, 0usize), |(a, n), c| {
        (a + usize::from(c.is_ascii_alphabetic()), n + 1)
    });
    if alpha == 0 {
        1.0
    } else {
        ascii as f64 / alpha as f64
    }
}

pub fn merge_commit_ids(commits: &[CommitRecord]) -> BTreeSet<String> {
    commits.iter().filter(|c| c.is_merge()).map(|c| c.commit_id.clone()).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FilterTally {
    pub dropped_merge: usize,
    pub dropped_non_english: usize,
    pub dropped_duplicate: usize,
}

/// Applies the merge, language and duplicate filters, keeping input order.
pub fn filter_events(events: Vec<TodoEvent>, merge_commits: &BTreeSet<String>, config: &MiningConfig) -> Vec<TodoEvent> {
    filter_events_tallied(events, merge_commits, config).0
}

pub fn filter_events_tallied(
    events: Vec<TodoEvent>,
    merge_commits: &BTreeSet<String>,
    config: &MiningConfig,
) -> (Vec<TodoEvent>, FilterTally) {
    let mut tally = FilterTally::default();
    let mut seen: HashSet<(EventKind, String, String)> = HashSet::new();
    let kept = events
        .into_iter()
        .filter(|e| {
            if config.drop_merge_commits && merge_commits.contains(&e.commit_id) {
                tally.dropped_merge += 1;
                return false;
            }
            if config.drop_non_english && ascii_letter_ratio(&e.raw_comment) < config.english_ascii_ratio_threshold {
                tally.dropped_non_english += 1;
                return false;
            }
            if config.dedup {
                let key = (e.kind, normalize_todo(&e.raw_comment).joined(), e.commit_id.clone());
                if !seen.insert(key) {
                    tally.dropped_duplicate += 1;
                    return false;
                }
            }
            true
        })
        .collect();
    (kept, tally)
}

/// Everything `mine` produces for one repository.
#[derive(Debug, Clone)]
pub struct MinedRepository {
    pub repo_id: String,
    pub commits: Vec<CommitRecord>,
    pub events: Vec<TodoEvent>,
    pub diagnostics: MiningDiagnostics,
}

/// Walk, extract and filter in one pass.
pub fn mine_repository(repo_path: &Path, repo_id: &str, config: &MiningConfig) -> Result<MinedRepository> {
    let (commits, diff_diag) = walk_history_with_diagnostics(repo_path, config)?;
    let raw: Vec<TodoEvent> = commits
        .iter()
        .flat_map(|c| extract_todo_events(c, repo_id, config))
        .collect();
    let merges = merge_commit_ids(&commits);
    let events_found = raw.len();
    let (events, tally) = filter_events_tallied(raw, &merges, config);
    let diagnostics = MiningDiagnostics {
        commits: commits.len(),
        merge_commits: merges.len(),
        malformed_diff_lines: diff_diag.malformed_lines,
        binary_files: diff_diag.binary_files,
        events_found,
        dropped_merge: tally.dropped_merge,
        dropped_non_english: tally.dropped_non_english,
        dropped_duplicate: tally.dropped_duplicate,
    };
    Ok(MinedRepository {
        repo_id: repo_id.to_string(),
        commits,
        events,
        diagnostics,
    })
}

/// Default repository id: the final path component.
pub fn default_repo_id(repo_path: &Path) -> String {
    repo_path
        .canonicalize()
        .ok()
        .as_deref()
        .unwrap_or(repo_path)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "repo".to_string())
}
