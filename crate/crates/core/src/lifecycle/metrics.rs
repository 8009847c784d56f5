//! Resolved/unresolved proportions and lifetime averages per category.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Status, TodoRecord};
use crate::classify::{Category, Quality};

pub const HIGH_QUALITY: &str = "High-quality";
pub const LOW_QUALITY: &str = "Low-quality";
pub const OVERALL: &str = "Overall";

/// Row labels in output order.
pub const ROW_ORDER: [&str; 7] = ["Task Good", "Task Bad", "Notice Good", "Notice Bad", HIGH_QUALITY, LOW_QUALITY, OVERALL];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupBy {
    /// One set of rows over all records.
    Category,
    /// One set of rows per repository.
    Repository,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LifecycleMetrics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repo_id: Option<String>,
    pub category: String,
    pub total: usize,
    pub removed: usize,
    pub resolved: usize,
    pub unresolved: usize,
    /// resolved / total; `None` for an empty group.
    pub resolved_pct: Option<f64>,
    /// unresolved / removed; `None` when nothing was removed.
    pub unresolved_pct: Option<f64>,
    /// Mean over resolved records; `None` when nothing was resolved.
    pub mean_time_interval_days: Option<f64>,
    pub mean_commits: Option<f64>,
}

#[derive(Debug, Clone, Default)]
struct Acc {
    total: usize,
    resolved: usize,
    unresolved: usize,
    interval_sum: f64,
    commits_sum: u64,
}

impl Acc {
    fn add(&mut self, r: &TodoRecord) {
        self.total += 1;
        match r.status {
            Status::Open => {}
            Status::RemovedUnresolved => self.unresolved += 1,
            Status::Resolved => {
                self.resolved += 1;
                self.interval_sum += r.time_interval_days.unwrap_or(0.0);
                self.commits_sum += u64::from(r.commits_between.unwrap_or(0));
            }
        }
    }

    fn finish(&self, repo_id: Option<&str>, category: &str) -> LifecycleMetrics {
        let removed = self.resolved + self.unresolved;
        let ratio = |a: f64, b: usize| (b > 0).then(|| a / b as f64);
        LifecycleMetrics {
            repo_id: repo_id.map(str::to_string),
            category: category.to_string(),
            total: self.total,
            removed,
            resolved: self.resolved,
            unresolved: self.unresolved,
            resolved_pct: ratio(self.resolved as f64, self.total),
            unresolved_pct: ratio(self.unresolved as f64, removed),
            mean_time_interval_days: ratio(self.interval_sum, self.resolved),
            mean_commits: ratio(self.commits_sum as f64, self.resolved),
        }
    }
}

fn rows_for<'a>(records: impl Iterator<Item = &'a TodoRecord>, repo_id: Option<&str>) -> Vec<LifecycleMetrics> {
    let mut acc: BTreeMap<&str, Acc> = ROW_ORDER.iter().map(|&k| (k, Acc::default())).collect();
    for r in records {
        acc.get_mut(OVERALL).expect("row").add(r);
        let Some(v) = &r.verdict else { continue };
        let c = Category::of(v.form, v.quality);
        acc.get_mut(c.label()).expect("row").add(r);
        let level = if v.quality == Quality::Good { HIGH_QUALITY } else { LOW_QUALITY };
        acc.get_mut(level).expect("row").add(r);
    }
    ROW_ORDER.iter().map(|&k| acc[k].finish(repo_id, k)).collect()
}

/// Lifecycle rows for each category, the two quality levels and overall.
/// Records without a verdict only count toward the overall row.
pub fn compute_metrics(records: &[TodoRecord], group_by: GroupBy) -> Vec<LifecycleMetrics> {
    if records.is_empty() {
        return Vec::new();
    }
    match group_by {
        GroupBy::Category => rows_for(records.iter(), None),
        GroupBy::Repository => {
            let mut repos: BTreeMap<&str, Vec<&TodoRecord>> = BTreeMap::new();
            for r in records {
                repos.entry(&r.intro.repo_id).or_default().push(r);
            }
            repos.into_iter().flat_map(|(repo, rs)| rows_for(rs.into_iter(), Some(repo))).collect()
        }
    }
}
