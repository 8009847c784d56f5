//! Mining, classification and lifecycle analysis of TODO comments in Git
//! histories.

pub mod classify;
pub mod jsonl;
pub mod lifecycle;
pub mod miner;
pub mod normalize;
pub mod report;
pub mod stats;
