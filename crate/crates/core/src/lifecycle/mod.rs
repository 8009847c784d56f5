//! Joining introduced TODOs to their removals and summarizing how long they
//! lived.

pub mod graph;
pub mod matching;
pub mod metrics;
pub mod removal;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::Verdict;
use crate::miner::TodoEvent;

pub use graph::{CommitGraph, CommitNode};
pub use matching::match_pairs;
pub use metrics::{compute_metrics, GroupBy, LifecycleMetrics};
pub use removal::{classify_removal, label_removals, Overrides};

#[derive(Debug, Error)]
pub enum LifecycleError {
    #[error("commit {0} is not in the commit graph")]
    UnknownCommit(String),
    #[error("commit {commit} names parent {parent}, which is not in the graph")]
    MissingParent { commit: String, parent: String },
    #[error("commit graph contains a cycle")]
    Cycle,
    #[error("{intro} is not an ancestor of {elim}")]
    NoPath { intro: String, elim: String },
    #[error("record has no elimination")]
    NoElimination,
    #[error("override file line {line}: {message}")]
    Override { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    Open,
    Resolved,
    RemovedUnresolved,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Open => "Open",
            Status::Resolved => "Resolved",
            Status::RemovedUnresolved => "RemovedUnresolved",
        })
    }
}

impl FromStr for Status {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace(['_', '-', ' '], "").as_str() {
            "open" => Ok(Status::Open),
            "resolved" => Ok(Status::Resolved),
            "removedunresolved" | "unresolved" => Ok(Status::RemovedUnresolved),
            _ => Err(format!("unknown status {s:?}")),
        }
    }
}

/// An introduced TODO and, when it was removed, the removal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TodoRecord {
    pub intro: TodoEvent,
    pub elim: Option<TodoEvent>,
    pub status: Status,
    #[serde(default)]
    pub verdict: Option<Verdict>,
    pub time_interval_days: Option<f64>,
    pub commits_between: Option<u32>,
    /// Resolution status came from the fallback rule rather than evidence.
    #[serde(default)]
    pub low_confidence: bool,
}

impl TodoRecord {
    pub fn open(intro: TodoEvent) -> Self {
        TodoRecord {
            intro,
            elim: None,
            status: Status::Open,
            verdict: None,
            time_interval_days: None,
            commits_between: None,
            low_confidence: false,
        }
    }

    pub fn is_removed(&self) -> bool {
        self.status != Status::Open
    }
}

/// Seconds to days.
pub fn interval_days(intro_time: i64, elim_time: i64) -> f64 {
    (elim_time - intro_time) as f64 / 86_400.0
}
