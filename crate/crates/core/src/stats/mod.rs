//! Rank-sum tests, multiple-comparison correction and rater agreement.

pub mod holm;
pub mod kappa;
pub mod wilcoxon;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::Quality;
use crate::lifecycle::{Status, TodoRecord};

pub use holm::{holm_bonferroni, HolmDecision};
pub use kappa::{cohen_kappa, fleiss_kappa};
pub use wilcoxon::{wilcoxon_rank_sum, Method, RankSumResult};

pub const DEFAULT_ALPHA: f64 = 0.05;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("sample is empty")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFinite,
    #[error("alpha must lie in (0, 1), got {0}")]
    Alpha(f64),
    #[error("p-value {0} is outside [0, 1]")]
    PValue(f64),
    #[error("rater label lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("kappa is undefined: expected agreement is 1")]
    KappaUndefined,
    #[error("{0}")]
    Raters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hypothesis {
    H1,
    H2,
    H3,
    H4,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 4] = [Hypothesis::H1, Hypothesis::H2, Hypothesis::H3, Hypothesis::H4];

    /// What the null hypothesis says is equal between high- and low-quality
    /// TODOs.
    pub fn describe(self) -> &'static str {
        match self {
            Hypothesis::H1 => "resolved proportion per repository",
            Hypothesis::H2 => "unresolved proportion per repository",
            Hypothesis::H3 => "days from introduction to resolution",
            Hypothesis::H4 => "commits from introduction to resolution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatTestResult {
    pub hypothesis_id: Hypothesis,
    pub n_high: usize,
    pub n_low: usize,
    /// U of the high-quality sample.
    pub u_statistic: f64,
    pub p_value: f64,
    pub method: Method,
    pub alpha_adjusted: f64,
    pub rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub alpha: f64,
    pub results: Vec<StatTestResult>,
    /// Hypotheses left out because one side had no observations.
    pub skipped: Vec<Hypothesis>,
}

/// High- and low-quality samples for one hypothesis.
pub fn hypothesis_samples(records: &[TodoRecord], h: Hypothesis) -> (Vec<f64>, Vec<f64>) {
    let quality = |r: &TodoRecord| r.verdict.as_ref().map(|v| v.quality);
    match h {
        Hypothesis::H1 | Hypothesis::H2 => {
            // (total, removed, resolved, unresolved) per repo and quality
            let mut acc: BTreeMap<(&str, Quality), (usize, usize, usize, usize)> = BTreeMap::new();
            for r in records {
                let Some(q) = quality(r) else { continue };
                let e = acc.entry((r.intro.repo_id.as_str(), q)).or_default();
                e.0 += 1;
                match r.status {
                    Status::Open => {}
                    Status::Resolved => {
                        e.1 += 1;
                        e.2 += 1;
                    }
                    Status::RemovedUnresolved => {
                        e.1 += 1;
                        e.3 += 1;
                    }
                }
            }
            let (mut high, mut low) = (Vec::new(), Vec::new());
            for ((_, q), (total, removed, resolved, unresolved)) in acc {
                let value = if h == Hypothesis::H1 {
                    Some(resolved as f64 / total as f64)
                } else {
                    (removed > 0).then(|| unresolved as f64 / removed as f64)
                };
                if let Some(v) = value {
                    if q == Quality::Good { high.push(v) } else { low.push(v) }
                }
            }
            (high, low)
        }
        Hypothesis::H3 | Hypothesis::H4 => {
            let (mut high, mut low) = (Vec::new(), Vec::new());
            for r in records.iter().filter(|r| r.status == Status::Resolved) {
                let Some(q) = quality(r) else { continue };
                let v = if h == Hypothesis::H3 {
                    r.time_interval_days
                } else {
                    r.commits_between.map(f64::from)
                };
                if let Some(v) = v {
                    if q == Quality::Good { high.push(v) } else { low.push(v) }
                }
            }
            (high, low)
        }
    }
}

/// Runs every hypothesis that has data on both sides, then applies Holm's
/// correction across the tests that ran.
pub fn test_hypotheses(records: &[TodoRecord], alpha: f64) -> Result<HypothesisReport, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::Alpha(alpha));
    }
    let mut raw = Vec::new();
    let mut skipped = Vec::new();
    for h in Hypothesis::ALL {
        let (high, low) = hypothesis_samples(records, h);
        if high.is_empty() || low.is_empty() {
            skipped.push(h);
            continue;
        }
        raw.push((h, high.len(), low.len(), wilcoxon_rank_sum(&high, &low)?));
    }
    let p: Vec<f64> = raw.iter().map(|r| r.3.p_value).collect();
    let decisions = holm_bonferroni(&p, alpha)?;
    let results = raw
        .into_iter()
        .zip(decisions)
        .map(|((h, n_high, n_low, t), d)| StatTestResult {
            hypothesis_id: h,
            n_high,
            n_low,
            u_statistic: t.u_a,
            p_value: t.p_value,
            method: t.method,
            alpha_adjusted: d.adjusted_alpha,
            rejected: d.rejected,
        })
        .collect();
    Ok(HypothesisReport { alpha, results, skipped })
}
