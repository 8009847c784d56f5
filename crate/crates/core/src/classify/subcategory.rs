//! Keyword heuristics for the fifteen TODO subcategories.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::pos::{content_len, content_words};
use super::rules::{find_imperative, is_auto_generated};
use super::{Form, Verdict};
use crate::normalize::NormalizedTodo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subcategory {
    #[serde(rename = "Feature Request")]
    FeatureRequest,
    #[serde(rename = "Remove Workaround")]
    RemoveWorkaround,
    #[serde(rename = "Re-enable Commented Code")]
    ReenableCommentedCode,
    #[serde(rename = "Refactoring")]
    Refactoring,
    #[serde(rename = "Bug Fix")]
    BugFix,
    #[serde(rename = "Code Hygiene")]
    CodeHygiene,
    #[serde(rename = "Problem Confirmation")]
    ProblemConfirmation,
    #[serde(rename = "Testing")]
    Testing,
    #[serde(rename = "Documentation")]
    Documentation,
    #[serde(rename = "Provide suggestion")]
    ProvideSuggestion,
    #[serde(rename = "Highlight existing issue")]
    HighlightExistingIssue,
    #[serde(rename = "Analyze current situation")]
    AnalyzeCurrentSituation,
    #[serde(rename = "Throw pending question")]
    ThrowPendingQuestion,
    #[serde(rename = "Auto-generated TODOs")]
    AutoGenerated,
    #[serde(rename = "Indecipherable TODOs")]
    Indecipherable,
}

impl Subcategory {
    pub const TASK: [Subcategory; 9] = [
        Subcategory::FeatureRequest,
        Subcategory::RemoveWorkaround,
        Subcategory::ReenableCommentedCode,
        Subcategory::Refactoring,
        Subcategory::BugFix,
        Subcategory::CodeHygiene,
        Subcategory::ProblemConfirmation,
        Subcategory::Testing,
        Subcategory::Documentation,
    ];
    pub const NOTICE: [Subcategory; 6] = [
        Subcategory::ProvideSuggestion,
        Subcategory::HighlightExistingIssue,
        Subcategory::AnalyzeCurrentSituation,
        Subcategory::ThrowPendingQuestion,
        Subcategory::AutoGenerated,
        Subcategory::Indecipherable,
    ];

    pub fn form(self) -> Form {
        if Self::TASK.contains(&self) {
            Form::Task
        } else {
            Form::Notice
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subcategory::FeatureRequest => "Feature Request",
            Subcategory::RemoveWorkaround => "Remove Workaround",
            Subcategory::ReenableCommentedCode => "Re-enable Commented Code",
            Subcategory::Refactoring => "Refactoring",
            Subcategory::BugFix => "Bug Fix",
            Subcategory::CodeHygiene => "Code Hygiene",
            Subcategory::ProblemConfirmation => "Problem Confirmation",
            Subcategory::Testing => "Testing",
            Subcategory::Documentation => "Documentation",
            Subcategory::ProvideSuggestion => "Provide suggestion",
            Subcategory::HighlightExistingIssue => "Highlight existing issue",
            Subcategory::AnalyzeCurrentSituation => "Analyze current situation",
            Subcategory::ThrowPendingQuestion => "Throw pending question",
            Subcategory::AutoGenerated => "Auto-generated TODOs",
            Subcategory::Indecipherable => "Indecipherable TODOs",
        }
    }
}

impl fmt::Display for Subcategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcategory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::TASK
            .into_iter()
            .chain(Self::NOTICE)
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown subcategory {s:?}"))
    }
}

const REENABLE: &[&str] = &["uncomment", "reenable", "restore", "reactivate"];
const WORKAROUND: &[&str] = &["workaround", "workarounds", "hack", "hacks", "hacky", "kludge", "temporary", "temporarily", "temp", "flag"];
const REMOVAL_VERBS: &[&str] = &["remove", "delete", "drop", "replace", "revert"];
const HYGIENE: &[&str] = &["unused", "obsolete", "dead", "cleanup", "clean", "tidy", "move", "unnecessary", "redundant", "imports", "comments", "deprecated"];
const TESTING: &[&str] = &["test", "tests", "testing", "unittest", "unit"];
const DOCS: &[&str] = &["document", "doc", "docs", "javadoc", "documentation", "documented", "explain"];
const BUGS: &[&str] = &["fix", "bug", "broken", "crash", "npe", "leak", "wrong", "incorrect", "fixme", "bugs"];
const REFACTOR: &[&str] = &[
    "refactor", "refactoring", "simplify", "optimize", "extract", "rename", "improve", "rewrite", "reduce", "better", "performance", "reuse",
    "consolidate", "generalize", "inline", "cleaner", "rework", "redesign", "restructure", "deduplicate",
];
const CONFIRM: &[&str] = &["confirm", "check", "verify", "investigate", "figure", "look", "validate", "ensure", "revisit", "review", "double"];
const ISSUE: &[&str] = &[
    "issue", "issues", "bug", "bugs", "fails", "failing", "failed", "fail", "broken", "regression", "problem", "problems", "error", "crash",
    "crashes", "wrong", "incorrect", "leak", "flaky",
];
const SUGGESTION: &[&str] = &[
    "better", "maybe", "perhaps", "could", "should", "consider", "instead", "might", "would", "prefer", "ideally", "probably", "alternative",
    "alternatively", "suggest", "possibly",
];

fn task_subcategory(words: &[&str], verb: Option<&str>) -> Subcategory {
    let any = |list: &[&str]| words.iter().any(|w| list.contains(w));
    let verb_in = |list: &[&str]| verb.is_some_and(|v| list.contains(&v));
    let enable_again = words.windows(2).any(|p| p == ["re", "enable"]);
    if any(REENABLE) || enable_again || verb == Some("enable") {
        return Subcategory::ReenableCommentedCode;
    }
    if any(WORKAROUND) {
        return Subcategory::RemoveWorkaround;
    }
    if any(HYGIENE) || words.windows(2).any(|p| p == ["clean", "up"]) {
        return Subcategory::CodeHygiene;
    }
    if any(TESTING) {
        return Subcategory::Testing;
    }
    if any(DOCS) {
        return Subcategory::Documentation;
    }
    if verb_in(REMOVAL_VERBS) {
        return Subcategory::RemoveWorkaround;
    }
    if any(BUGS) {
        return Subcategory::BugFix;
    }
    if any(REFACTOR) {
        return Subcategory::Refactoring;
    }
    if verb_in(CONFIRM) || words.windows(2).any(|p| p == ["make", "sure"]) {
        return Subcategory::ProblemConfirmation;
    }
    Subcategory::FeatureRequest
}

fn notice_subcategory(todo: &NormalizedTodo, words: &[&str], n: usize, reference: bool) -> Subcategory {
    let any = |list: &[&str]| words.iter().any(|w| list.contains(w));
    if is_auto_generated(todo) {
        return Subcategory::AutoGenerated;
    }
    let plain = words.iter().filter(|w| **w != "<url>").count();
    if reference && plain == 0 {
        return Subcategory::HighlightExistingIssue;
    }
    if n <= 1 {
        return Subcategory::Indecipherable;
    }
    if todo.question {
        return Subcategory::ThrowPendingQuestion;
    }
    if any(ISSUE) || reference {
        return Subcategory::HighlightExistingIssue;
    }
    if any(SUGGESTION) {
        return Subcategory::ProvideSuggestion;
    }
    Subcategory::AnalyzeCurrentSituation
}

/// Fills in `verdict.subcategory` from the TODO text and its decided form.
pub fn tag_subcategory(todo: &NormalizedTodo, mut verdict: Verdict) -> Verdict {
    let cw = content_words(todo);
    let n = content_len(&cw);
    let reference = cw.iter().any(|w| w.is_reference());
    let words: Vec<&str> = cw.iter().filter(|w| !w.is_placeholder()).map(|w| w.text).collect();
    verdict.subcategory = Some(match verdict.form {
        Form::Task => {
            let verb = find_imperative(&cw).map(|i| cw[i].text);
            task_subcategory(&words, verb)
        }
        Form::Notice => notice_subcategory(todo, &words, n, reference),
    });
    verdict
}
