//! Canonical token streams for TODO comments and diffs.
//!
//! Both normalizers lowercase text and split it on whitespace and
//! punctuation. Noisy spans are swapped for placeholders first:
//!
//! * a parenthesized span directly after the `TODO` keyword (`TODO(alice):`)
//!   becomes `<info_tag>`,
//! * `#` followed by digits becomes `<link_id>`,
//! * a 7 to 40 character hexadecimal run with at least one digit and one
//!   letter becomes `<commit_id>`.
//!
//! Replacement decisions are made on maximal alphanumeric runs, which are
//! exactly the tokens the splitter produces. That keeps
//! `normalize_todo(tokens.join(" "))` equal to the original token stream.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Placeholder {
    #[serde(rename = "<info_tag>")]
    InfoTag,
    #[serde(rename = "<commit_id>")]
    CommitId,
    #[serde(rename = "<link_id>")]
    LinkId,
}

impl Placeholder {
    pub const ALL: [Placeholder; 3] = [Placeholder::InfoTag, Placeholder::CommitId, Placeholder::LinkId];

    pub fn as_str(self) -> &'static str {
        match self {
            Placeholder::InfoTag => "<info_tag>",
            Placeholder::CommitId => "<commit_id>",
            Placeholder::LinkId => "<link_id>",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.as_str() == token)
    }
}

impl fmt::Display for Placeholder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn is_placeholder(token: &str) -> bool {
    Placeholder::from_token(token).is_some()
}

/// A cleaned TODO comment.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedTodo {
    pub tokens: Vec<String>,
    pub placeholder_counts: BTreeMap<Placeholder, usize>,
    /// Token index ranges (half-open) that came from URLs in the raw text.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub url_spans: Vec<(usize, usize)>,
    /// The raw text contained a question mark.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub question: bool,
}

impl NormalizedTodo {
    /// Builds a record from an already tokenized stream (e.g. a dataset row
    /// without raw text). Placeholders are recounted from the tokens.
    pub fn from_tokens(tokens: Vec<String>) -> Self {
        let mut placeholder_counts = BTreeMap::new();
        for t in &tokens {
            if let Some(p) = Placeholder::from_token(t) {
                *placeholder_counts.entry(p).or_insert(0) += 1;
            }
        }
        NormalizedTodo {
            tokens,
            placeholder_counts,
            url_spans: Vec::new(),
            question: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn placeholder_count(&self, p: Placeholder) -> usize {
        self.placeholder_counts.get(&p).copied().unwrap_or(0)
    }

    /// Whether token `idx` lies inside a URL span.
    pub fn in_url(&self, idx: usize) -> bool {
        self.url_spans.iter().any(|&(s, e)| idx >= s && idx < e)
    }

    /// Position of the first `todo` keyword token, if any.
    pub fn keyword_index(&self) -> Option<usize> {
        self.tokens.iter().position(|t| t == "todo")
    }

    /// Indices of the tokens that follow the TODO keyword, skipping
    /// placeholders. Without a keyword every non-placeholder token counts.
    pub fn content_indices(&self) -> Vec<usize> {
        let start = self.keyword_index().map_or(0, |i| i + 1);
        (start..self.tokens.len())
            .filter(|&i| !is_placeholder(&self.tokens[i]))
            .collect()
    }

    pub fn joined(&self) -> String {
        self.tokens.join(" ")
    }
}

/// A cleaned diff.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedDiff {
    pub tokens: Vec<String>,
    /// Set when the input did not look like unified diff output.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub malformed: bool,
}

impl NormalizedDiff {
    pub fn from_tokens(tokens: Vec<String>) -> Self {
        NormalizedDiff { tokens, malformed: false }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Removes `//`, `/*`, `*/` and leading `*` markers from every line and joins
/// the lines with single spaces.
pub fn strip_comment_markers(raw: &str) -> String {
    let mut parts = Vec::new();
    for line in raw.lines() {
        let mut s = line.trim();
        loop {
            let before = s.len();
            if let Some(rest) = s.strip_prefix("//") {
                s = rest.trim_start_matches('/').trim_start();
            }
            if let Some(rest) = s.strip_prefix("/*") {
                s = rest.trim_start_matches('*').trim_start();
            }
            if s.starts_with('*') && !s.starts_with("*/") {
                s = s.trim_start_matches('*').trim_start();
            }
            if let Some(rest) = s.strip_suffix("*/") {
                s = rest.trim_end_matches('*').trim_end();
            }
            if let Some(rest) = s.strip_prefix("*/") {
                s = rest.trim_start();
            }
            if s.len() == before {
                break;
            }
        }
        if !s.is_empty() {
            parts.push(s);
        }
    }
    parts.join(" ")
}

pub fn normalize_todo(raw_comment: &str) -> NormalizedTodo {
    let text = strip_comment_markers(raw_comment);
    let question = text.contains('?');
    let mut out = Scanner::new(&text, true).run();
    out.question = question;
    out
}

/// Header lines that `git diff` / `git show` emit around hunks.
fn is_diff_header(line: &str) -> bool {
    const PREFIXES: &[&str] = &[
        "diff --git ",
        "diff --cc ",
        "diff --combined ",
        "index ",
        "--- ",
        "+++ ",
        "@@",
        "new file mode",
        "deleted file mode",
        "old mode",
        "new mode",
        "similarity index",
        "dissimilarity index",
        "rename from",
        "rename to",
        "copy from",
        "copy to",
        "Binary files ",
        "\\ No newline at end of file",
    ];
    PREFIXES.iter().any(|p| line.starts_with(p))
}

pub fn normalize_diff(diff_text: &str) -> NormalizedDiff {
    let mut body = String::new();
    let mut saw_header = false;
    let mut stray = false;
    for line in diff_text.lines() {
        if is_diff_header(line) {
            saw_header = true;
            continue;
        }
        match line.chars().next() {
            Some('+' | '-' | ' ') | None => {}
            Some(_) => stray = true,
        }
        body.push_str(line);
        body.push('\n');
    }
    let malformed = !body.trim().is_empty() && (!saw_header || stray);
    let tokens = Scanner::new(&body, false).run().tokens;
    NormalizedDiff { tokens, malformed }
}

/// Splits `text` into lowercase tokens, substituting placeholders.
struct Scanner {
    chars: Vec<char>,
    pos: usize,
    info_tags: bool,
    tokens: Vec<String>,
    counts: BTreeMap<Placeholder, usize>,
    url_spans: Vec<(usize, usize)>,
}

impl Scanner {
    fn new(src: &str, info_tags: bool) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
            info_tags,
            tokens: Vec::new(),
            counts: BTreeMap::new(),
            url_spans: Vec::new(),
        }
    }

    fn push_placeholder(&mut self, p: Placeholder) {
        self.tokens.push(p.as_str().to_string());
        *self.counts.entry(p).or_insert(0) += 1;
    }

    fn peek_placeholder(&self) -> Option<Placeholder> {
        if self.chars.get(self.pos) != Some(&'<') {
            return None;
        }
        Placeholder::ALL.into_iter().find(|p| {
            let pat: Vec<char> = p.as_str().chars().collect();
            self.chars.len() >= self.pos + pat.len()
                && self.chars[self.pos..self.pos + pat.len()]
                    .iter()
                    .zip(&pat)
                    .all(|(a, b)| a.to_ascii_lowercase() == *b)
        })
    }

    fn alnum_run(&self, from: usize) -> usize {
        let mut end = from;
        while end < self.chars.len() && self.chars[end].is_alphanumeric() {
            end += 1;
        }
        end
    }

    /// `scheme://` starting at the current position, returning the end of the
    /// URL (first whitespace or closing bracket).
    fn url_end(&self) -> Option<usize> {
        let run_end = self.alnum_run(self.pos);
        let scheme: String = self.chars[self.pos..run_end].iter().collect::<String>().to_lowercase();
        if !matches!(scheme.as_str(), "http" | "https" | "ftp" | "file") {
            return None;
        }
        if self.chars.get(run_end..run_end + 3) != Some(&[':', '/', '/'][..]) {
            return None;
        }
        let mut end = run_end + 3;
        while end < self.chars.len() && !self.chars[end].is_whitespace() && !matches!(self.chars[end], ')' | ']' | '>' | '"' | '\'') {
            end += 1;
        }
        Some(end)
    }

    /// The closing parenthesis matching the `(` at `open`.
    fn matching_paren(&self, open: usize) -> Option<usize> {
        let mut depth = 0usize;
        for (i, &c) in self.chars.iter().enumerate().skip(open) {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(i);
                    }
                }
                _ => {}
            }
        }
        None
    }

    fn run(mut self) -> NormalizedTodo {
        while self.pos < self.chars.len() {
            if let Some(p) = self.peek_placeholder() {
                self.pos += p.as_str().chars().count();
                self.push_placeholder(p);
                continue;
            }
            let c = self.chars[self.pos];
            if c == '#' {
                let end = self.alnum_run(self.pos + 1);
                if end > self.pos + 1 && self.chars[self.pos + 1..end].iter().all(|c| c.is_ascii_digit()) {
                    self.push_placeholder(Placeholder::LinkId);
                    self.pos = end;
                    continue;
                }
                self.pos += 1;
                continue;
            }
            if !c.is_alphanumeric() {
                self.pos += 1;
                continue;
            }
            if let Some(url_end) = self.url_end() {
                let start_tok = self.tokens.len();
                self.scan_words(url_end);
                if self.tokens.len() > start_tok {
                    self.url_spans.push((start_tok, self.tokens.len()));
                }
                continue;
            }
            let end = self.alnum_run(self.pos);
            let word: String = self.chars[self.pos..end].iter().collect();
            self.pos = end;
            self.push_word(&word);
            if self.info_tags && word.eq_ignore_ascii_case("todo") {
                let mut look = self.pos;
                while look < self.chars.len() && self.chars[look].is_whitespace() {
                    look += 1;
                }
                if self.chars.get(look) == Some(&'(') {
                    if let Some(close) = self.matching_paren(look) {
                        self.push_placeholder(Placeholder::InfoTag);
                        self.pos = close + 1;
                    }
                }
            }
        }
        NormalizedTodo {
            tokens: self.tokens,
            placeholder_counts: self.counts,
            url_spans: self.url_spans,
            question: false,
        }
    }

    /// Plain word/link scanning up to `end`, used for URL bodies.
    fn scan_words(&mut self, end: usize) {
        while self.pos < end {
            let c = self.chars[self.pos];
            if c == '#' {
                let run = self.alnum_run(self.pos + 1).min(end);
                if run > self.pos + 1 && self.chars[self.pos + 1..run].iter().all(|c| c.is_ascii_digit()) {
                    self.push_placeholder(Placeholder::LinkId);
                    self.pos = run;
                    continue;
                }
            }
            if !c.is_alphanumeric() {
                self.pos += 1;
                continue;
            }
            let run = self.alnum_run(self.pos).min(end);
            let word: String = self.chars[self.pos..run].iter().collect();
            self.pos = run;
            self.push_word(&word);
        }
    }

    fn push_word(&mut self, word: &str) {
        if looks_like_commit_id(word) {
            self.push_placeholder(Placeholder::CommitId);
        } else {
            // lowercasing can produce combining marks (e.g. U+0130)
            let lower: String = word.to_lowercase().chars().filter(|c| c.is_alphanumeric()).collect();
            if !lower.is_empty() {
                self.tokens.push(lower);
            }
        }
    }
}

/// 7 to 40 hex characters mixing digits and letters.
pub fn looks_like_commit_id(word: &str) -> bool {
    let len = word.len();
    (7..=40).contains(&len)
        && word.chars().all(|c| c.is_ascii_hexdigit())
        && word.chars().any(|c| c.is_ascii_digit())
        && word.chars().any(|c| c.is_ascii_alphabetic())
}
