//! Part-of-speech baseline: a TODO is a task when it contains a base-form
//! verb, and a good one when that verb has an object and the text is not
//! trivially short.

use super::lexicon::{tags, Tags};
use super::{ClassifyError, Form, Quality, Verdict, VerdictSource};
use crate::normalize::{NormalizedTodo, Placeholder};

/// A token after the TODO keyword. Each URL is collapsed into one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Word<'a> {
    pub text: &'a str,
    pub tags: Tags,
    pub url: bool,
}

impl Word<'_> {
    pub fn is_placeholder(&self) -> bool {
        self.tags == Tags::PLACEHOLDER
    }

    /// Placeholders that stand for a concrete referent (issue, commit).
    pub fn is_reference(&self) -> bool {
        self.url || self.text == Placeholder::LinkId.as_str() || self.text == Placeholder::CommitId.as_str()
    }
}

pub(crate) fn content_words(todo: &NormalizedTodo) -> Vec<Word<'_>> {
    let start = todo.keyword_index().map_or(0, |i| i + 1);
    let mut out = Vec::new();
    let mut i = start;
    while i < todo.tokens.len() {
        if let Some(&(_, end)) = todo.url_spans.iter().find(|&&(s, e)| i >= s && i < e) {
            out.push(Word {
                text: "<url>",
                tags: Tags::NN,
                url: true,
            });
            i = end;
            continue;
        }
        let text = todo.tokens[i].as_str();
        out.push(Word {
            text,
            tags: tags(text),
            url: false,
        });
        i += 1;
    }
    out
}

/// Number of content words, not counting placeholders.
pub(crate) fn content_len(words: &[Word<'_>]) -> usize {
    words.iter().filter(|w| !w.is_placeholder()).count()
}

/// One tag per token, chosen from context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pos {
    /// Base form verb (imperative, after a modal or `to`).
    Vb,
    /// Finite verb: present, past, modal or auxiliary.
    VbFinite,
    Vbg,
    Noun,
    Adj,
    Adv,
    Det,
    Pron,
    Prep,
    To,
    Conj,
    Wh,
    Num,
    Particle,
    Placeholder,
}

fn pick(word: &str, t: Tags, prev: Option<Pos>, first: bool, next: Option<Tags>) -> Pos {
    if t == Tags::PLACEHOLDER {
        return Pos::Placeholder;
    }
    if t == Tags::CD {
        return Pos::Num;
    }
    if word == "to" {
        return Pos::To;
    }
    let after_det = matches!(prev, Some(Pos::Det | Pos::Adj));
    if after_det && t.has(Tags::NOUNISH | Tags::VBG) {
        return Pos::Noun;
    }
    if t.has(Tags::VB) && (first || matches!(prev, Some(Pos::To))) {
        return Pos::Vb;
    }
    if t.has(Tags::VB) && matches!(prev, Some(Pos::VbFinite)) && !t.has(Tags::NN) {
        return Pos::Vb;
    }
    if t.has(Tags::VB) && matches!(prev, Some(Pos::Pron)) && !t.has(Tags::MODAL | Tags::AUX) {
        return Pos::VbFinite;
    }
    if t.has(Tags::DEM) {
        // determiner when a noun follows
        return if next.is_some_and(|n| n.has(Tags::NOUNISH) && !n.has(Tags::FINITE)) {
            Pos::Det
        } else {
            Pos::Pron
        };
    }
    const ORDER: &[(Tags, Pos)] = &[
        (Tags::MODAL, Pos::VbFinite),
        (Tags::AUX, Pos::VbFinite),
        (Tags::DT, Pos::Det),
        (Tags::POSS, Pos::Det),
        (Tags::PRP, Pos::Pron),
        (Tags::INDEF, Pos::Pron),
        (Tags::WH, Pos::Wh),
        (Tags::CC, Pos::Conj),
        (Tags::IN, Pos::Prep),
        (Tags::RP, Pos::Particle),
        (Tags::NN, Pos::Noun),
        (Tags::VBZ, Pos::VbFinite),
        (Tags::VBD, Pos::VbFinite),
        (Tags::NNS, Pos::Noun),
        (Tags::JJ, Pos::Adj),
        (Tags::RB, Pos::Adv),
        (Tags::VBG, Pos::Vbg),
        (Tags::VB, Pos::Vb),
    ];
    for &(tag, pos) in ORDER {
        if t.has(tag) {
            return pos;
        }
    }
    Pos::Noun
}

/// Greedy left-to-right tagging of the words after the TODO keyword.
pub fn tag_words(words: &[&str]) -> Vec<Pos> {
    let all: Vec<Tags> = words.iter().map(|w| tags(w)).collect();
    let mut out: Vec<Pos> = Vec::with_capacity(words.len());
    let mut seen_word = false;
    for (i, w) in words.iter().enumerate() {
        let prev = out.last().copied().filter(|p| *p != Pos::Placeholder);
        let p = pick(w, all[i], prev, !seen_word, all.get(i + 1).copied());
        seen_word |= p != Pos::Placeholder;
        out.push(p);
    }
    out
}

pub fn classify_pos(todo: &NormalizedTodo) -> Result<Verdict, ClassifyError> {
    if todo.is_empty() {
        return Err(ClassifyError::EmptyTokens);
    }
    let words = content_words(todo);
    let texts: Vec<&str> = words.iter().map(|w| w.text).collect();
    let pos = tag_words(&texts);
    let n = content_len(&words);

    let verb = pos.iter().position(|p| *p == Pos::Vb);
    let Some(v) = verb else {
        let q = if n >= 3 { Quality::Good } else { Quality::Bad };
        return Ok(Verdict::certain(Form::Notice, q, VerdictSource::Pos));
    };
    let object = pos[v + 1..]
        .iter()
        .take_while(|p| !matches!(p, Pos::Vb | Pos::VbFinite | Pos::Conj | Pos::Wh))
        .any(|p| matches!(p, Pos::Noun | Pos::Vbg | Pos::Placeholder));
    let q = if object && n >= 3 { Quality::Good } else { Quality::Bad };
    Ok(Verdict::certain(Form::Task, q, VerdictSource::Pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize_todo;

    fn verdict(raw: &str) -> (Form, Quality) {
        let v = classify_pos(&normalize_todo(raw)).unwrap();
        (v.form, v.quality)
    }

    #[test]
    fn base_verb_with_object_is_task() {
        let words = ["remove", "the", "flag", "after", "deprecation"];
        assert_eq!(
            tag_words(&words),
            vec![Pos::Vb, Pos::Det, Pos::Noun, Pos::Prep, Pos::Noun]
        );
        assert_eq!(verdict("TODO remove the flag after deprecation"), (Form::Task, Quality::Good));
    }

    #[test]
    fn split_compound_object() {
        assert_eq!(
            verdict("TODO: remove try/catch block when compacting encrypted caches is supported"),
            (Form::Task, Quality::Good)
        );
    }

    #[test]
    fn ellipsis_and_lone_verb() {
        assert_eq!(verdict("TODO ..."), (Form::Notice, Quality::Bad));
        assert_eq!(verdict("TODO implement"), (Form::Task, Quality::Bad));
    }

    #[test]
    fn declarative_is_notice() {
        assert_eq!(
            verdict("TODO: this assumes that the CWD of the Maven process is the plugin basedir"),
            (Form::Notice, Quality::Good)
        );
    }

    #[test]
    fn empty_is_error() {
        assert!(classify_pos(&NormalizedTodo::default()).is_err());
    }

    #[test]
    fn content_words_collapse_urls() {
        let t = normalize_todo("TODO: https://issues.jenkins-ci.org/browse/JENKINS-53788 (JDK11 issue on CI)");
        let w = content_words(&t);
        let texts: Vec<&str> = w.iter().map(|w| w.text).collect();
        assert_eq!(texts, vec!["<url>", "jdk11", "issue", "on", "ci"]);
    }
}
