//! Category distributions, rendered tables and run manifests.

pub mod manifest;
pub mod render;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::eval::CrossValidation;
use crate::classify::{Category, Verdict};
use crate::lifecycle::LifecycleMetrics;
use crate::miner::TodoEvent;
use crate::stats::HypothesisReport;

pub use manifest::{sha256_hex, RunManifest};
pub use render::{emit_report, metrics_csv, render, Format};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no verdicts to aggregate")]
    EmptyInput,
    #[error("report has no sections")]
    NoSections,
    #[error("unknown report format {0:?} (expected csv, json or markdown)")]
    Format(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// One classified TODO, keyed by the event that introduced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub repo_id: String,
    pub commit_id: String,
    pub file_path: String,
    pub line_no: u32,
    pub raw_comment: String,
    pub verdict: Verdict,
}

impl VerdictRecord {
    pub fn new(event: &TodoEvent, verdict: Verdict) -> Self {
        VerdictRecord {
            repo_id: event.repo_id.clone(),
            commit_id: event.commit_id.clone(),
            file_path: event.file_path.clone(),
            line_no: event.line_no,
            raw_comment: event.raw_comment.clone(),
            verdict,
        }
    }

    pub fn key(&self) -> (&str, &str, &str, u32) {
        (&self.repo_id, &self.commit_id, &self.file_path, self.line_no)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "repo_id", rename_all = "lowercase")]
pub enum Scope {
    Overall,
    Repository(String),
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scope::Overall => f.write_str("overall"),
            Scope::Repository(r) => f.write_str(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub category: Category,
    pub count: usize,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub scope: Scope,
    pub total: usize,
    /// Always four rows in `Category::ALL` order.
    pub rows: Vec<DistributionRow>,
}

impl DistributionTable {
    /// Table from per-category counts in `Category::ALL` order.
    pub fn from_counts(scope: Scope, counts: [usize; 4]) -> Result<Self, ReportError> {
        let total: usize = counts.iter().sum();
        if total == 0 {
            return Err(ReportError::EmptyInput);
        }
        let rows = Category::ALL
            .iter()
            .zip(counts)
            .map(|(&category, count)| DistributionRow {
                category,
                count,
                proportion: count as f64 / total as f64,
            })
            .collect();
        Ok(DistributionTable { scope, total, rows })
    }

    pub fn row(&self, c: Category) -> &DistributionRow {
        &self.rows[Category::ALL.iter().position(|&x| x == c).expect("category")]
    }
}

fn slot(c: Category) -> usize {
    Category::ALL.iter().position(|&x| x == c).expect("category")
}

/// The overall table followed by one table per repository, in repo order.
pub fn aggregate_distribution<'a, I>(verdicts: I) -> Result<Vec<DistributionTable>, ReportError>
where
    I: IntoIterator<Item = (&'a str, &'a Verdict)>,
{
    let mut overall = [0usize; 4];
    let mut per_repo: BTreeMap<&str, [usize; 4]> = BTreeMap::new();
    for (repo, v) in verdicts {
        let i = slot(v.category());
        overall[i] += 1;
        per_repo.entry(repo).or_default()[i] += 1;
    }
    let mut out = vec![DistributionTable::from_counts(Scope::Overall, overall)?];
    for (repo, counts) in per_repo {
        out.push(DistributionTable::from_counts(Scope::Repository(repo.to_string()), counts)?);
    }
    Ok(out)
}

/// Everything a report can contain. Absent sections are skipped.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Vec<DistributionTable>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Vec<LifecycleMetrics>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<Vec<CrossValidation>>,
}

impl Report {
    pub fn is_empty(&self) -> bool {
        self.distribution.is_none() && self.metrics.is_none() && self.stats.is_none() && self.evaluation.is_none()
    }
}
