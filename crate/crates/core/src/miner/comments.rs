//! Java comment lexing over diff hunks and TODO event extraction.

use super::diff::{FileDiff, Hunk, LineMarker};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LexState {
    Code,
    Block,
    TextBlock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CommentKind {
    Line,
    Block,
}

/// The part of one source line that belongs to a comment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CommentPiece {
    pub kind: CommentKind,
    pub text: String,
    /// Groups the pieces of a single block comment.
    pub comment_id: usize,
    pub closes: bool,
    /// The line holds nothing but this comment.
    pub whole_line: bool,
}

struct Lexer {
    state: LexState,
    next_id: usize,
    open_id: usize,
}

impl Lexer {
    fn new() -> Self {
        Lexer {
            state: LexState::Code,
            next_id: 0,
            open_id: 0,
        }
    }

    fn fresh_id(&mut self) -> usize {
        self.next_id += 1;
        self.next_id
    }

    fn lex(&mut self, line: &str) -> Vec<CommentPiece> {
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let byte_at = |i: usize| chars.get(i).map_or(line.len(), |&(b, _)| b);
        let at = |i: usize| chars.get(i).map(|&(_, c)| c);
        let mut pieces = Vec::new();
        let mut i = 0;
        let mut code_seen = false;

        if self.state == LexState::Code {
            // A hunk can start inside a Javadoc block whose opener lies
            // outside the hunk.
            let t = line.trim_start();
            if t == "*" || t.starts_with("* ") || t.starts_with("*/") || t.starts_with("**") && !t.starts_with("**=") {
                self.state = LexState::Block;
                self.open_id = self.fresh_id();
            }
        }

        while i <= chars.len() {
            match self.state {
                LexState::Block => {
                    let start = i;
                    let mut j = i;
                    let mut closed = None;
                    while j + 1 < chars.len() {
                        if at(j) == Some('*') && at(j + 1) == Some('/') {
                            closed = Some(j + 2);
                            break;
                        }
                        j += 1;
                    }
                    let end = closed.unwrap_or(chars.len());
                    let text = &line[byte_at(start)..byte_at(end)];
                    let whole_line = !code_seen && closed.is_none_or(|e| line[byte_at(e)..].trim().is_empty());
                    pieces.push(CommentPiece {
                        kind: CommentKind::Block,
                        text: text.to_string(),
                        comment_id: self.open_id,
                        closes: closed.is_some(),
                        whole_line,
                    });
                    if closed.is_some() {
                        self.state = LexState::Code;
                    }
                    i = end;
                    if closed.is_none() {
                        break;
                    }
                }
                LexState::TextBlock => {
                    let mut j = i;
                    let mut closed = false;
                    while j < chars.len() {
                        if at(j) == Some('\\') {
                            j += 2;
                            continue;
                        }
                        if at(j) == Some('"') && at(j + 1) == Some('"') && at(j + 2) == Some('"') {
                            closed = true;
                            j += 3;
                            break;
                        }
                        j += 1;
                    }
                    code_seen = true;
                    i = j;
                    if closed {
                        self.state = LexState::Code;
                    } else {
                        break;
                    }
                }
                LexState::Code => {
                    let Some(c) = at(i) else { break };
                    match c {
                        '/' if at(i + 1) == Some('/') => {
                            pieces.push(CommentPiece {
                                kind: CommentKind::Line,
                                text: line[byte_at(i)..].to_string(),
                                comment_id: self.fresh_id(),
                                closes: true,
                                whole_line: !code_seen,
                            });
                            break;
                        }
                        '/' if at(i + 1) == Some('*') => {
                            self.state = LexState::Block;
                            self.open_id = self.fresh_id();
                            // scan for the terminator after the opener
                            let start = i;
                            let mut j = i + 2;
                            let mut closed = None;
                            while j + 1 < chars.len() {
                                if at(j) == Some('*') && at(j + 1) == Some('/') {
                                    closed = Some(j + 2);
                                    break;
                                }
                                j += 1;
                            }
                            let end = closed.unwrap_or(chars.len());
                            let whole_line = !code_seen && closed.is_none_or(|e| line[byte_at(e)..].trim().is_empty());
                            pieces.push(CommentPiece {
                                kind: CommentKind::Block,
                                text: line[byte_at(start)..byte_at(end)].to_string(),
                                comment_id: self.open_id,
                                closes: closed.is_some(),
                                whole_line,
                            });
                            if closed.is_some() {
                                self.state = LexState::Code;
                                i = end;
                            } else {
                                break;
                            }
                        }
                        '"' if at(i + 1) == Some('"') && at(i + 2) == Some('"') => {
                            self.state = LexState::TextBlock;
                            code_seen = true;
                            i += 3;
                        }
                        '"' | '\'' => {
                            let quote = c;
                            let mut j = i + 1;
                            while let Some(d) = at(j) {
                                if d == '\\' {
                                    j += 2;
                                    continue;
                                }
                                j += 1;
                                if d == quote {
                                    break;
                                }
                            }
                            code_seen = true;
                            i = j;
                        }
                        c => {
                            if !c.is_whitespace() {
                                code_seen = true;
                            }
                            i += 1;
                        }
                    }
                }
            }
        }
        pieces
    }
}

/// Whether `text` holds the TODO keyword as a standalone word.
pub fn contains_todo(text: &str, case_sensitive: bool) -> bool {
    let hay: std::borrow::Cow<str> = if case_sensitive {
        text.into()
    } else {
        text.to_ascii_uppercase().into()
    };
    let bytes = hay.as_bytes();
    hay.match_indices("TODO").any(|(i, _)| {
        let before_ok = i == 0 || !(bytes[i - 1] as char).is_ascii_alphanumeric();
        let after_ok = bytes
            .get(i + 4)
            .is_none_or(|&b| !(b as char).is_ascii_alphanumeric() && b != b'_');
        before_ok && after_ok
    })
}

/// A TODO comment found on one side of a hunk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FoundTodo {
    pub raw_comment: String,
    pub line_no: u32,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Old,
    New,
}

/// TODO comments whose first TODO-bearing line carries `marker`
/// (`Added` reads the post-image, `Removed` the pre-image).
fn scan_hunk(hunk: &Hunk, marker: LineMarker, case_sensitive: bool) -> Vec<FoundTodo> {
    let side = if marker == LineMarker::Added { Side::New } else { Side::Old };
    let lines: Vec<_> = hunk
        .lines
        .iter()
        .filter(|l| l.marker == LineMarker::Context || l.marker == marker)
        .collect();
    let mut lexer = Lexer::new();
    let pieces: Vec<Vec<CommentPiece>> = lines.iter().map(|l| lexer.lex(&l.text)).collect();

    let mut found = Vec::new();
    for (li, line) in lines.iter().enumerate() {
        for piece in &pieces[li] {
            if !contains_todo(&piece.text, case_sensitive) || line.marker != marker {
                continue;
            }
            let mut parts = vec![piece.text.trim().to_string()];
            let mut open = piece.kind == CommentKind::Block && !piece.closes;
            let mut next = li + 1;
            while next < lines.len() && lines[next].marker == marker {
                let cont = match piece.kind {
                    CommentKind::Block if open => pieces[next].iter().find(|p| p.comment_id == piece.comment_id),
                    CommentKind::Line => match pieces[next].as_slice() {
                        [only] if only.kind == CommentKind::Line && only.whole_line && piece.whole_line => Some(only),
                        _ => None,
                    },
                    _ => None,
                };
                let Some(cont) = cont else { break };
                if contains_todo(&cont.text, case_sensitive) {
                    break;
                }
                let t = cont.text.trim();
                if cont.kind == CommentKind::Line && t.trim_start_matches('/').trim().is_empty() {
                    break;
                }
                parts.push(t.to_string());
                if cont.kind == CommentKind::Block && cont.closes {
                    open = false;
                }
                next += 1;
                if !open && piece.kind == CommentKind::Block {
                    break;
                }
            }
            let line_no = match side {
                Side::New => line.new_line,
                Side::Old => line.old_line,
            };
            if let Some(line_no) = line_no {
                found.push(FoundTodo {
                    raw_comment: parts.join("\n"),
                    line_no,
                });
            }
        }
    }
    found
}

pub(crate) fn scan_file(fd: &FileDiff, marker: LineMarker, case_sensitive: bool) -> Vec<FoundTodo> {
    fd.hunks
        .iter()
        .flat_map(|h| scan_hunk(h, marker, case_sensitive))
        .collect()
}
