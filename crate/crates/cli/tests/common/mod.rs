#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const EPOCH: &str = "1700000000";

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_todolens"));
    c.env("SOURCE_DATE_EPOCH", EPOCH).env_remove("TODOLENS_BRIDGE_CMD");
    c
}

/// Runs `todolens args..` inside `cwd`.
pub fn run(cwd: &Path, args: &[&str]) -> Output {
    bin().args(args).current_dir(cwd).output().expect("spawn todolens")
}

pub fn run_ok(cwd: &Path, args: &[&str]) -> Output {
    let out = run(cwd, args);
    assert!(out.status.success(), "todolens {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out
}

/// The 12-commit scripted repository shared with the core tests.
pub fn build_tiny_repo(parent: &Path) -> PathBuf {
    let script = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/tiny_repo.sh");
    let dir = parent.join("tiny-repo");
    let status = Command::new("sh").arg(script).arg(&dir).status().expect("run fixture script");
    assert!(status.success());
    dir
}

/// mine -> classify --model pos -> lifecycle -> report in `work`, with
/// relative paths only. Returns every file produced, keyed by relative path.
pub fn pipeline(work: &Path) -> BTreeMap<String, Vec<u8>> {
    build_tiny_repo(work);
    run_ok(work, &["mine", "tiny-repo", "--out", "events.jsonl"]);
    run_ok(work, &["classify", "--model", "pos", "--input", "events.jsonl", "--repo", "tiny-repo", "--out", "verdicts.jsonl"]);
    run_ok(
        work,
        &["lifecycle", "--events", "events.jsonl", "--verdicts", "verdicts.jsonl", "--repo", "tiny-repo", "--out-records", "records.jsonl", "--out-metrics", "metrics.csv"],
    );
    run_ok(work, &["report", "--verdicts", "verdicts.jsonl", "--records", "records.jsonl", "--out-dir", "report"]);
    let mut files = BTreeMap::new();
    collect(work, work, &mut files);
    files
}

fn collect(root: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
    let mut entries: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    for p in entries {
        if p.file_name().is_some_and(|n| n == "tiny-repo") {
            continue;
        }
        if p.is_dir() {
            collect(root, &p, out);
        } else {
            let rel = p.strip_prefix(root).unwrap().to_string_lossy().into_owned();
            out.insert(rel, std::fs::read(&p).unwrap());
        }
    }
}

/// Commit id by subject line, via plain git.
pub fn commit_by_subject(repo: &Path, subject: &str) -> String {
    let out = Command::new("git").args(["log", "--all", "--format=%H %s"]).current_dir(repo).output().expect("git log");
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .find_map(|l| l.split_once(' ').filter(|(_, s)| *s == subject).map(|(h, _)| h.to_string()))
        .unwrap_or_else(|| panic!("no commit {subject:?}"))
}

/// Parent lists from `git rev-list --parents`, independent of the miner.
pub fn parent_map(repo: &Path) -> BTreeMap<String, Vec<String>> {
    let out = Command::new("git").args(["rev-list", "--parents", "HEAD"]).current_dir(repo).output().expect("git rev-list");
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| {
            let mut it = l.split_whitespace().map(str::to_string);
            (it.next().unwrap(), it.collect())
        })
        .collect()
}
