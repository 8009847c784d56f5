//! TODO form and quality classification.

pub mod bridge;
pub mod dataset;
pub mod eval;
pub mod lexical;
pub mod lexicon;
pub mod pos;
pub mod rules;
pub mod subcategory;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::{NormalizedDiff, NormalizedTodo};

pub use subcategory::{tag_subcategory, Subcategory};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("TODO has no tokens")]
    EmptyTokens,
    #[error("dataset contains a single {0} class")]
    SingleClass(String),
    #[error("dataset has fewer than {0} examples")]
    TooFewExamples(usize),
    #[error("empty vocabulary")]
    EmptyVocabulary,
    #[error("model has not been trained")]
    Untrained,
    #[error("model file: {0}")]
    ModelFormat(String),
    #[error("invalid hyperparameter: {0}")]
    Hyperparameter(String),
    #[error("length mismatch: {predictions} predictions for {gold} gold labels")]
    LengthMismatch { predictions: usize, gold: usize },
    #[error("nothing to evaluate")]
    EmptyEvaluation,
    #[error("k = {k} is out of range for {n} examples")]
    FoldsOutOfRange { k: usize, n: usize },
    #[error(transparent)]
    Bridge(#[from] bridge::BridgeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Form {
    Task,
    Notice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quality {
    Good,
    Bad,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Task => "Task",
            Form::Notice => "Notice",
        })
    }
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quality::Good => "Good",
            Quality::Bad => "Bad",
        })
    }
}

impl FromStr for Form {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "task" => Ok(Form::Task),
            "notice" => Ok(Form::Notice),
            _ => Err(format!("unknown form {s:?}")),
        }
    }
}

impl FromStr for Quality {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "good" => Ok(Quality::Good),
            "bad" => Ok(Quality::Bad),
            _ => Err(format!("unknown quality {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictSource {
    Pos,
    Rules,
    Lexical,
    Bridge,
}

impl fmt::Display for VerdictSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictSource::Pos => "pos",
            VerdictSource::Rules => "rules",
            VerdictSource::Lexical => "lexical",
            VerdictSource::Bridge => "bridge",
        })
    }
}

impl FromStr for VerdictSource {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pos" => Ok(VerdictSource::Pos),
            "rules" => Ok(VerdictSource::Rules),
            "lexical" => Ok(VerdictSource::Lexical),
            "bridge" => Ok(VerdictSource::Bridge),
            _ => Err(format!("unknown classifier {s:?}")),
        }
    }
}

/// Which label a binary model predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Form,
    Quality,
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "form" => Ok(Target::Form),
            "quality" => Ok(Target::Quality),
            _ => Err(format!("unknown target {s:?}")),
        }
    }
}

/// A classifier's decision. `form_probs` is (task, notice) and
/// `quality_probs` is (good, bad).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub form_probs: [f64; 2],
    pub quality_probs: [f64; 2],
    pub form: Form,
    pub quality: Quality,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcategory: Option<Subcategory>,
    pub source: VerdictSource,
}

impl Verdict {
    /// Derives labels from the probability pairs. Ties go to Notice and Bad.
    pub fn from_probs(form_probs: [f64; 2], quality_probs: [f64; 2], source: VerdictSource) -> Verdict {
        Verdict {
            form: if form_probs[0] > form_probs[1] { Form::Task } else { Form::Notice },
            quality: if quality_probs[0] > quality_probs[1] { Quality::Good } else { Quality::Bad },
            form_probs,
            quality_probs,
            subcategory: None,
            source,
        }
    }

    /// Probabilities 1/0 on the given labels.
    pub fn certain(form: Form, quality: Quality, source: VerdictSource) -> Verdict {
        let fp = match form {
            Form::Task => [1.0, 0.0],
            Form::Notice => [0.0, 1.0],
        };
        let qp = match quality {
            Quality::Good => [1.0, 0.0],
            Quality::Bad => [0.0, 1.0],
        };
        Verdict::from_probs(fp, qp, source)
    }

    /// Row label used by the distribution and lifecycle tables.
    pub fn category(&self) -> Category {
        Category::of(self.form, self.quality)
    }
}

/// The four form/quality combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    TaskGood,
    TaskBad,
    NoticeGood,
    NoticeBad,
}

impl Category {
    pub const ALL: [Category; 4] = [Category::TaskGood, Category::TaskBad, Category::NoticeGood, Category::NoticeBad];

    pub fn of(form: Form, quality: Quality) -> Category {
        match (form, quality) {
            (Form::Task, Quality::Good) => Category::TaskGood,
            (Form::Task, Quality::Bad) => Category::TaskBad,
            (Form::Notice, Quality::Good) => Category::NoticeGood,
            (Form::Notice, Quality::Bad) => Category::NoticeBad,
        }
    }

    pub fn form(self) -> Form {
        match self {
            Category::TaskGood | Category::TaskBad => Form::Task,
            Category::NoticeGood | Category::NoticeBad => Form::Notice,
        }
    }

    pub fn quality(self) -> Quality {
        match self {
            Category::TaskGood | Category::NoticeGood => Quality::Good,
            Category::TaskBad | Category::NoticeBad => Quality::Bad,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::TaskGood => "Task Good",
            Category::TaskBad => "Task Bad",
            Category::NoticeGood => "Notice Good",
            Category::NoticeBad => "Notice Bad",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Anything that turns a TODO (plus optional diff) into a verdict.
pub trait Classifier {
    fn classify(&mut self, todo: &NormalizedTodo, diff: Option<&NormalizedDiff>) -> Result<Verdict, ClassifyError>;

    /// Training hook for cross-validation; fixed classifiers ignore it.
    fn fit(&mut self, _train: &[dataset::LabeledExample]) -> Result<(), ClassifyError> {
        Ok(())
    }
}

pub struct PosClassifier;

impl Classifier for PosClassifier {
    fn classify(&mut self, todo: &NormalizedTodo, _diff: Option<&NormalizedDiff>) -> Result<Verdict, ClassifyError> {
        let v = pos::classify_pos(todo)?;
        Ok(tag_subcategory(todo, v))
    }
}

#[derive(Default)]
pub struct RuleClassifier {
    pub config: rules::RuleConfig,
}

impl Classifier for RuleClassifier {
    fn classify(&mut self, todo: &NormalizedTodo, diff: Option<&NormalizedDiff>) -> Result<Verdict, ClassifyError> {
        let v = rules::classify_rules_with(todo, diff, &self.config)?;
        Ok(tag_subcategory(todo, v))
    }
}
