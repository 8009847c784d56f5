#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixture_script() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/tiny_repo.sh")
}

/// Builds the scripted 12-commit repository under `parent/tiny-repo`.
pub fn build_tiny_repo(parent: &Path) -> PathBuf {
    let dir = parent.join("tiny-repo");
    let status = Command::new("sh")
        .arg(fixture_script())
        .arg(&dir)
        .status()
        .expect("run fixture script");
    assert!(status.success(), "fixture script failed");
    dir
}

/// Commit ids by subject line, via plain git.
pub fn commit_by_subject(repo: &Path, subject: &str) -> String {
    let out = Command::new("git")
        .args(["log", "--all", "--format=%H %s"])
        .current_dir(repo)
        .output()
        .expect("git log");
    let text = String::from_utf8(out.stdout).unwrap();
    text.lines()
        .find_map(|l| l.split_once(' ').filter(|(_, s)| *s == subject).map(|(h, _)| h.to_string()))
        .unwrap_or_else(|| panic!("no commit {subject:?}"))
}

/// Parent lists straight from `git rev-list --parents`, independent of the miner.
pub fn parent_map(repo: &Path) -> std::collections::BTreeMap<String, Vec<String>> {
    let out = Command::new("git")
        .args(["rev-list", "--parents", "HEAD"])
        .current_dir(repo)
        .output()
        .expect("git rev-list");
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let mut it = l.split_whitespace().map(str::to_string);
            let id = it.next().unwrap();
            (id, it.collect())
        })
        .collect()
}
