//! Labeled TODO datasets.
//!
//! One JSON object per line:
//! `{todo_raw, todo_tokens, diff_tokens, form_label, quality_label,
//! subcategory, repo_id, commit_id}`. `todo_raw` and `subcategory` may be
//! null; when `todo_tokens` is empty it is derived from `todo_raw`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Form, Quality, Subcategory};
use crate::jsonl::{read_jsonl_file, JsonlError};
use crate::normalize::{normalize_diff, normalize_todo, NormalizedDiff, NormalizedTodo};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledExample {
    #[serde(default)]
    pub todo_raw: Option<String>,
    #[serde(default)]
    pub todo_tokens: Vec<String>,
    #[serde(default)]
    pub diff_tokens: Vec<String>,
    pub form_label: Form,
    pub quality_label: Quality,
    #[serde(default)]
    pub subcategory: Option<Subcategory>,
    #[serde(default)]
    pub repo_id: String,
    #[serde(default)]
    pub commit_id: String,
}

impl LabeledExample {
    pub fn from_raw(todo_raw: &str, diff_text: &str, form: Form, quality: Quality) -> Self {
        LabeledExample {
            todo_raw: Some(todo_raw.to_string()),
            todo_tokens: normalize_todo(todo_raw).tokens,
            diff_tokens: normalize_diff(diff_text).tokens,
            form_label: form,
            quality_label: quality,
            subcategory: None,
            repo_id: String::new(),
            commit_id: String::new(),
        }
    }

    pub fn from_tokens(todo_tokens: Vec<String>, diff_tokens: Vec<String>, form: Form, quality: Quality) -> Self {
        LabeledExample {
            todo_raw: None,
            todo_tokens,
            diff_tokens,
            form_label: form,
            quality_label: quality,
            subcategory: None,
            repo_id: String::new(),
            commit_id: String::new(),
        }
    }

    /// The normalized TODO. Raw text is preferred because it also carries URL
    /// spans and the question flag.
    pub fn todo(&self) -> NormalizedTodo {
        match &self.todo_raw {
            Some(raw) if !raw.trim().is_empty() => normalize_todo(raw),
            _ => NormalizedTodo::from_tokens(self.todo_tokens.clone()),
        }
    }

    pub fn diff(&self) -> NormalizedDiff {
        NormalizedDiff::from_tokens(self.diff_tokens.clone())
    }

    fn fill_tokens(&mut self) {
        if self.todo_tokens.is_empty() {
            if let Some(raw) = &self.todo_raw {
                self.todo_tokens = normalize_todo(raw).tokens;
            }
        }
    }
}

pub fn load_dataset(path: &Path) -> Result<Vec<LabeledExample>, JsonlError> {
    let mut rows: Vec<LabeledExample> = read_jsonl_file(path)?;
    rows.iter_mut().for_each(LabeledExample::fill_tokens);
    Ok(rows)
}
