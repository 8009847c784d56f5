//! Holm-Bonferroni step-down correction.

use serde::{Deserialize, Serialize};

use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolmDecision {
    pub p_value: f64,
    /// alpha / (m - rank) where rank is the 0-based position in ascending-p
    /// order.
    pub adjusted_alpha: f64,
    pub rejected: bool,
}

/// Decisions in input order. Ties in p keep their input order.
pub fn holm_bonferroni(p_values: &[f64], alpha: f64) -> Result<Vec<HolmDecision>, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::Alpha(alpha));
    }
    if let Some(&p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(StatsError::PValue(p));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));
    let mut out = vec![
        HolmDecision {
            p_value: 0.0,
            adjusted_alpha: 0.0,
            rejected: false,
        };
        m
    ];
    let mut still_rejecting = true;
    for (rank, &i) in order.iter().enumerate() {
        let adjusted_alpha = alpha / (m - rank) as f64;
        still_rejecting &= p_values[i] <= adjusted_alpha;
        out[i] = HolmDecision {
            p_value: p_values[i],
            adjusted_alpha,
            rejected: still_rejecting,
        };
    }
    Ok(out)
}
