//! Ordered rule list for TODO form and quality.
//!
//! 1. Auto-generated IDE templates are Notice/Bad.
//! 2. A TODO whose only content is a link or issue id is Notice/Bad.
//! 3. An imperative verb with a concrete object and at least `N` content
//!    words is Task/Good.
//! 4. Any other imperative is Task/Bad.
//! 5. A declarative sentence or question with at least `N` content words is
//!    Notice/Good.
//! 6. Everything else is Notice/Bad.

use serde::{Deserialize, Serialize};

use super::lexicon::Tags;
use super::pos::{content_len, content_words, Word};
use super::{ClassifyError, Form, Quality, Verdict, VerdictSource};
use crate::normalize::{NormalizedDiff, NormalizedTodo};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RuleConfig {
    /// Minimum number of content words for a "clear" description.
    pub min_content_tokens: usize,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig { min_content_tokens: 4 }
    }
}

/// Which rule decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleHit {
    AutoGenerated,
    BareLink,
    ClearTask,
    VagueTask,
    ClearNotice,
    VagueNotice,
}

impl RuleHit {
    pub fn labels(self) -> (Form, Quality) {
        match self {
            RuleHit::AutoGenerated | RuleHit::BareLink | RuleHit::VagueNotice => (Form::Notice, Quality::Bad),
            RuleHit::ClearTask => (Form::Task, Quality::Good),
            RuleHit::VagueTask => (Form::Task, Quality::Bad),
            RuleHit::ClearNotice => (Form::Notice, Quality::Good),
        }
    }
}

const FILLERS: &[&str] = &["also", "then", "please", "first", "just", "now", "eventually", "ideally", "still", "finally", "again", "later", "soon"];
const HEDGES: &[&str] = &["maybe", "perhaps", "probably", "possibly"];
const SUBJECTS: &[&str] = &["i", "we", "you", "they", "he", "she", "someone", "somebody"];
const COMPLEMENT_PREPS: &[&str] = &["to", "for", "with", "on", "into", "onto", "from", "about", "of", "at", "in", "over", "through", "via", "by"];
const CLAUSE_WH: &[&str] = &["why", "how", "what", "which", "whether", "where"];

pub fn is_auto_generated(todo: &NormalizedTodo) -> bool {
    let t = &todo.tokens;
    t.iter().any(|w| w == "autogenerated") || t.windows(2).any(|p| p[0] == "auto" && p[1] == "generated")
}

fn is_filler(w: &Word<'_>) -> bool {
    FILLERS.contains(&w.text)
        || (w.text.len() > 4 && w.text.ends_with("ly") && w.tags.is_only(Tags::RB) && !HEDGES.contains(&w.text))
}

fn next_word<'a>(words: &'a [Word<'a>], from: usize) -> Option<(usize, &'a Word<'a>)> {
    words.iter().enumerate().skip(from).find(|(_, w)| !w.is_placeholder())
}

/// Index of the verb that makes this TODO an instruction, if any.
pub(crate) fn find_imperative(words: &[Word<'_>]) -> Option<usize> {
    let mut i = 0;
    while let Some((j, w)) = next_word(words, i) {
        if is_filler(w) {
            i = j + 1;
            continue;
        }
        if HEDGES.contains(&w.text) {
            return None;
        }
        // "we need to ...", "you must ...", "need to ..."
        let obligation = |k: usize| -> Option<usize> {
            let (k, m) = next_word(words, k)?;
            match m.text {
                "must" => next_word(words, k + 1).map(|(v, _)| v),
                "need" | "needs" | "have" | "has" => {
                    let (t, to) = next_word(words, k + 1)?;
                    (to.text == "to").then_some(())?;
                    next_word(words, t + 1).map(|(v, _)| v)
                }
                _ => None,
            }
        };
        if SUBJECTS.contains(&w.text) {
            return obligation(j + 1).filter(|&v| words[v].tags.has(Tags::VB));
        }
        if w.text == "need" || w.text == "needs" {
            return obligation(j).filter(|&v| words[v].tags.has(Tags::VB));
        }
        if !w.tags.has(Tags::VB) {
            return None;
        }
        if w.tags.has(Tags::AUX | Tags::MODAL) {
            // "do we ...?" is a question, "do something" is an instruction
            let subject_follows = next_word(words, j + 1).is_some_and(|(_, n)| n.tags.has(Tags::PRP) || SUBJECTS.contains(&n.text));
            return (!subject_follows).then_some(j);
        }
        return Some(j);
    }
    None
}

/// Whether the verb at `v` is followed by something it acts on.
pub(crate) fn has_object(words: &[Word<'_>], v: usize, diff_present: bool) -> bool {
    let mut prep_used = false;
    let mut j = v + 1;
    while j < words.len() {
        let w = &words[j];
        let next = words.get(j + 1);
        if w.is_placeholder() {
            if w.is_reference() {
                return true;
            }
            j += 1;
            continue;
        }
        if w.url {
            return true;
        }
        let t = w.tags;
        if t.has(Tags::RP) && j == v + 1 {
            j += 1;
            continue;
        }
        if t.has(Tags::DEM) {
            let det = next.is_some_and(|n| n.tags.has(Tags::NOUNISH | Tags::VBG) && !n.tags.has(Tags::FINITE | Tags::PRP));
            if det {
                j += 1;
                continue;
            }
            return diff_present;
        }
        if t.has(Tags::INDEF | Tags::PRP) {
            return false;
        }
        if t.has(Tags::DT | Tags::POSS) || t == Tags::CD {
            j += 1;
            continue;
        }
        if t.has(Tags::IN) {
            if w.text == "to" && next.is_some_and(|n| n.tags.has(Tags::VB) && !n.tags.has(Tags::NOUNISH)) {
                return has_object(words, j + 1, diff_present);
            }
            if !prep_used && COMPLEMENT_PREPS.contains(&w.text) {
                prep_used = true;
                j += 1;
                continue;
            }
            return false;
        }
        if CLAUSE_WH.contains(&w.text) {
            return words.len() - j > 2;
        }
        let adjective_use = t.has(Tags::JJ) && next.is_some_and(|n| n.tags.has(Tags::NOUNISH));
        if t.has(Tags::NOUNISH | Tags::VBG) && !adjective_use {
            return true;
        }
        if t.has(Tags::JJ | Tags::RB) {
            j += 1;
            continue;
        }
        return false;
    }
    false
}

fn is_finite(words: &[Word<'_>], i: usize) -> bool {
    let t = words[i].tags;
    if t.has(Tags::MODAL | Tags::AUX) {
        return true;
    }
    if t.has(Tags::VBZ) && !t.has(Tags::NNS) {
        return true;
    }
    let after_subject = i > 0 && {
        let p = &words[i - 1];
        SUBJECTS.contains(&p.text) || p.text == "it" || (p.tags.has(Tags::DEM) && !p.tags.has(Tags::NN))
    };
    after_subject && t.has(Tags::VB | Tags::VBZ | Tags::VBD)
}

fn is_question(todo: &NormalizedTodo, words: &[Word<'_>]) -> bool {
    todo.question || words.iter().find(|w| !w.is_placeholder()).is_some_and(|w| w.tags.has(Tags::WH))
}

/// The rule that fires for `todo`.
pub fn explain(todo: &NormalizedTodo, diff: Option<&NormalizedDiff>, config: &RuleConfig) -> Result<RuleHit, ClassifyError> {
    if todo.is_empty() {
        return Err(ClassifyError::EmptyTokens);
    }
    if is_auto_generated(todo) {
        return Ok(RuleHit::AutoGenerated);
    }
    let words = content_words(todo);
    let plain = words.iter().filter(|w| !w.is_placeholder() && !w.url).count();
    if plain == 0 && words.iter().any(Word::is_reference) {
        return Ok(RuleHit::BareLink);
    }
    let n = content_len(&words);
    let diff_present = diff.is_some_and(|d| !d.is_empty());
    if let Some(v) = find_imperative(&words) {
        return Ok(if n >= config.min_content_tokens && has_object(&words, v, diff_present) {
            RuleHit::ClearTask
        } else {
            RuleHit::VagueTask
        });
    }
    let sentence = (0..words.len()).any(|i| !words[i].is_placeholder() && is_finite(&words, i)) || is_question(todo, &words);
    Ok(if sentence && n >= config.min_content_tokens {
        RuleHit::ClearNotice
    } else {
        RuleHit::VagueNotice
    })
}

pub fn classify_rules(todo: &NormalizedTodo) -> Result<Verdict, ClassifyError> {
    classify_rules_with(todo, None, &RuleConfig::default())
}

pub fn classify_rules_with(
    todo: &NormalizedTodo,
    diff: Option<&NormalizedDiff>,
    config: &RuleConfig,
) -> Result<Verdict, ClassifyError> {
    let (form, quality) = explain(todo, diff, config)?.labels();
    Ok(Verdict::certain(form, quality, VerdictSource::Rules))
}
