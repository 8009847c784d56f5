//! Parser for the unified diff text `git log -p` prints for one commit.
//!
//! Hunk bodies are consumed by the counts in their `@@` headers, so removed
//! lines that happen to start with `--` are never mistaken for file headers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineMarker {
    Added,
    Removed,
    Context,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffLine {
    pub marker: LineMarker,
    pub text: String,
    /// 1-based line number in the pre-image (context and removed lines).
    pub old_line: Option<u32>,
    /// 1-based line number in the post-image (context and added lines).
    pub new_line: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hunk {
    pub old_start: u32,
    pub old_len: u32,
    pub new_start: u32,
    pub new_len: u32,
    pub lines: Vec<DiffLine>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileChange {
    Added,
    Deleted,
    Modified,
    Renamed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDiff {
    pub old_path: String,
    pub new_path: String,
    pub change: FileChange,
    pub binary: bool,
    pub hunks: Vec<Hunk>,
}

impl FileDiff {
    pub fn lines(&self) -> impl Iterator<Item = &DiffLine> {
        self.hunks.iter().flat_map(|h| h.lines.iter())
    }

    pub fn is_rename(&self) -> bool {
        self.old_path != self.new_path
    }

    /// Index of the hunk holding the removed line `old_line`.
    pub fn hunk_for_removed(&self, old_line: u32) -> Option<usize> {
        self.hunks.iter().position(|h| {
            h.lines
                .iter()
                .any(|l| l.marker == LineMarker::Removed && l.old_line == Some(old_line))
        })
    }

    /// Re-renders the diff as unified diff text.
    pub fn to_unified(&self) -> String {
        let mut out = format!("diff --git a/{} b/{}\n", self.old_path, self.new_path);
        let old = if self.change == FileChange::Added { "/dev/null".to_string() } else { format!("a/{}", self.old_path) };
        let new = if self.change == FileChange::Deleted { "/dev/null".to_string() } else { format!("b/{}", self.new_path) };
        if !self.hunks.is_empty() {
            out.push_str(&format!("--- {old}\n+++ {new}\n"));
        }
        for h in &self.hunks {
            out.push_str(&format!("@@ -{},{} +{},{} @@\n", h.old_start, h.old_len, h.new_start, h.new_len));
            for l in &h.lines {
                let m = match l.marker {
                    LineMarker::Added => '+',
                    LineMarker::Removed => '-',
                    LineMarker::Context => ' ',
                };
                out.push(m);
                out.push_str(&l.text);
                out.push('\n');
            }
        }
        out
    }
}

/// Counters for input the parser skipped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffDiagnostics {
    pub malformed_lines: usize,
    pub binary_files: usize,
}

impl DiffDiagnostics {
    pub fn absorb(&mut self, other: DiffDiagnostics) {
        self.malformed_lines += other.malformed_lines;
        self.binary_files += other.binary_files;
    }
}

/// Undoes git's C-style quoting of paths containing unusual bytes.
fn unquote(path: &str) -> String {
    let Some(inner) = path.strip_prefix('"').and_then(|p| p.strip_suffix('"')) else {
        return path.to_string();
    };
    let mut bytes = Vec::with_capacity(inner.len());
    let mut it = inner.bytes().peekable();
    while let Some(b) = it.next() {
        if b != b'\\' {
            bytes.push(b);
            continue;
        }
        match it.next() {
            Some(b'n') => bytes.push(b'\n'),
            Some(b't') => bytes.push(b'\t'),
            Some(b'"') => bytes.push(b'"'),
            Some(b'\\') => bytes.push(b'\\'),
            Some(d @ b'0'..=b'7') => {
                let mut v = u32::from(d - b'0');
                for _ in 0..2 {
                    if let Some(&n @ b'0'..=b'7') = it.peek() {
                        v = v * 8 + u32::from(n - b'0');
                        it.next();
                    }
                }
                bytes.push(v as u8);
            }
            Some(other) => bytes.push(other),
            None => {}
        }
    }
    String::from_utf8_lossy(&bytes).into_owned()
}

fn strip_side_prefix(path: &str, prefix: &str) -> String {
    let p = unquote(path.trim_end_matches('\t'));
    p.strip_prefix(prefix).map(str::to_string).unwrap_or(p)
}

/// Splits the `a/X b/Y` tail of a `diff --git` line.
fn split_git_header(rest: &str) -> (String, String) {
    if rest.starts_with('"') {
        // quoted old path; the new path follows the closing quote
        let mut escaped = false;
        for (i, c) in rest.char_indices().skip(1) {
            match c {
                '\\' if !escaped => escaped = true,
                '"' if !escaped => {
                    let old = strip_side_prefix(&rest[..=i], "a/");
                    let new = strip_side_prefix(rest[i + 1..].trim_start(), "b/");
                    return (old, new);
                }
                _ => escaped = false,
            }
        }
    }
    let candidates: Vec<usize> = rest.match_indices(" b/").map(|(i, _)| i).collect();
    // Prefer the split whose halves name the same file.
    for &i in &candidates {
        let (old, new) = (&rest[..i], &rest[i + 1..]);
        if old.strip_prefix("a/") == new.strip_prefix("b/") {
            return (strip_side_prefix(old, "a/"), strip_side_prefix(new, "b/"));
        }
    }
    match candidates.first() {
        Some(&i) => (strip_side_prefix(&rest[..i], "a/"), strip_side_prefix(&rest[i + 1..], "b/")),
        None => (rest.to_string(), rest.to_string()),
    }
}

fn parse_range(s: &str) -> Option<(u32, u32)> {
    let s = &s[1..];
    match s.split_once(',') {
        Some((start, len)) => Some((start.parse().ok()?, len.parse().ok()?)),
        None => Some((s.parse().ok()?, 1)),
    }
}

fn parse_hunk_header(line: &str) -> Option<(u32, u32, u32, u32)> {
    let rest = line.strip_prefix("@@ ")?;
    let end = rest.find(" @@")?;
    let mut parts = rest[..end].split_whitespace();
    let old = parts.next().filter(|p| p.starts_with('-'))?;
    let new = parts.next().filter(|p| p.starts_with('+'))?;
    let (os, ol) = parse_range(old)?;
    let (ns, nl) = parse_range(new)?;
    Some((os, ol, ns, nl))
}

/// Parses every `diff --git` section in `text`.
pub fn parse_unified_diff(text: &str) -> (Vec<FileDiff>, DiffDiagnostics) {
    let mut files: Vec<FileDiff> = Vec::new();
    let mut diag = DiffDiagnostics::default();
    let mut lines = text.lines().peekable();

    while let Some(line) = lines.next() {
        let Some(rest) = line.strip_prefix("diff --git ") else {
            if !line.trim().is_empty() {
                diag.malformed_lines += 1;
            }
            continue;
        };
        let (old_path, new_path) = split_git_header(rest);
        let mut fd = FileDiff {
            old_path,
            new_path,
            change: FileChange::Modified,
            binary: false,
            hunks: Vec::new(),
        };

        // extended header lines
        while let Some(&next) = lines.peek() {
            if next.starts_with("diff --git ") || next.starts_with("@@ ") {
                break;
            }
            lines.next();
            if next.starts_with("new file mode") {
                fd.change = FileChange::Added;
            } else if next.starts_with("deleted file mode") {
                fd.change = FileChange::Deleted;
            } else if let Some(p) = next.strip_prefix("rename from ") {
                fd.old_path = unquote(p);
                fd.change = FileChange::Renamed;
            } else if let Some(p) = next.strip_prefix("rename to ") {
                fd.new_path = unquote(p);
                fd.change = FileChange::Renamed;
            } else if let Some(p) = next.strip_prefix("--- ") {
                if p != "/dev/null" {
                    fd.old_path = strip_side_prefix(p, "a/");
                }
            } else if let Some(p) = next.strip_prefix("+++ ") {
                if p != "/dev/null" {
                    fd.new_path = strip_side_prefix(p, "b/");
                }
            } else if next.starts_with("Binary files ") || next.starts_with("GIT binary patch") {
                fd.binary = true;
                diag.binary_files += 1;
            }
        }

        // hunks
        while let Some(&next) = lines.peek() {
            if next.starts_with("diff --git ") {
                break;
            }
            lines.next();
            let Some((old_start, old_len, new_start, new_len)) = parse_hunk_header(next) else {
                if !next.trim().is_empty() {
                    diag.malformed_lines += 1;
                }
                continue;
            };
            let mut hunk = Hunk {
                old_start,
                old_len,
                new_start,
                new_len,
                lines: Vec::new(),
            };
            let (mut old_left, mut new_left) = (old_len, new_len);
            let (mut old_no, mut new_no) = (old_start, new_start);
            while old_left > 0 || new_left > 0 {
                let Some(&body) = lines.peek() else { break };
                let (marker, text) = match body.chars().next() {
                    Some('+') if new_left > 0 => (LineMarker::Added, &body[1..]),
                    Some('-') if old_left > 0 => (LineMarker::Removed, &body[1..]),
                    Some(' ') if old_left > 0 && new_left > 0 => (LineMarker::Context, &body[1..]),
                    // some tools strip the space of empty context lines
                    None if old_left > 0 && new_left > 0 => (LineMarker::Context, ""),
                    Some('\\') => {
                        lines.next();
                        continue;
                    }
                    // short hunk; the hunk loop counts the stray line
                    _ => break,
                };
                lines.next();
                let (ol, nl) = match marker {
                    LineMarker::Added => {
                        new_left -= 1;
                        new_no += 1;
                        (None, Some(new_no - 1))
                    }
                    LineMarker::Removed => {
                        old_left -= 1;
                        old_no += 1;
                        (Some(old_no - 1), None)
                    }
                    LineMarker::Context => {
                        old_left -= 1;
                        new_left -= 1;
                        old_no += 1;
                        new_no += 1;
                        (Some(old_no - 1), Some(new_no - 1))
                    }
                };
                hunk.lines.push(DiffLine {
                    marker,
                    text: text.to_string(),
                    old_line: ol,
                    new_line: nl,
                });
            }
            if lines.peek().is_some_and(|l| l.starts_with('\\')) {
                lines.next();
            }
            fd.hunks.push(hunk);
        }

        if fd.change == FileChange::Added {
            fd.old_path = fd.new_path.clone();
        } else if fd.change == FileChange::Deleted {
            fd.new_path = fd.old_path.clone();
        }
        files.push(fd);
    }
    (files, diag)
}
