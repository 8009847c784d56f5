//! Inter-rater agreement.

use std::collections::BTreeMap;

use super::StatsError;

/// Cohen's kappa for two raters labeling the same items.
pub fn cohen_kappa<L: Ord>(rater_a: &[L], rater_b: &[L]) -> Result<f64, StatsError> {
    if rater_a.len() != rater_b.len() {
        return Err(StatsError::LengthMismatch(rater_a.len(), rater_b.len()));
    }
    if rater_a.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let n = rater_a.len() as f64;
    let agree = rater_a.iter().zip(rater_b).filter(|(a, b)| a == b).count() as f64;
    let mut marg: BTreeMap<&L, (usize, usize)> = BTreeMap::new();
    for l in rater_a {
        marg.entry(l).or_default().0 += 1;
    }
    for l in rater_b {
        marg.entry(l).or_default().1 += 1;
    }
    let p_o = agree / n;
    let p_e: f64 = marg.values().map(|&(a, b)| (a as f64 / n) * (b as f64 / n)).sum();
    if (1.0 - p_e).abs() < 1e-15 {
        return Err(StatsError::KappaUndefined);
    }
    Ok((p_o - p_e) / (1.0 - p_e))
}

/// Fleiss' kappa from an item x category count matrix. Every row must sum
/// to the same number of raters (at least two).
pub fn fleiss_kappa(counts: &[Vec<usize>]) -> Result<f64, StatsError> {
    let Some(first) = counts.first() else {
        return Err(StatsError::EmptySample);
    };
    let k = first.len();
    let raters: usize = first.iter().sum();
    if raters < 2 {
        return Err(StatsError::Raters(format!("need at least 2 raters per item, got {raters}")));
    }
    for (i, row) in counts.iter().enumerate() {
        if row.len() != k {
            return Err(StatsError::Raters(format!("item {i} has {} categories, expected {k}", row.len())));
        }
        let s: usize = row.iter().sum();
        if s != raters {
            return Err(StatsError::Raters(format!("item {i} has {s} ratings, expected {raters}")));
        }
    }
    let n_items = counts.len() as f64;
    let r = raters as f64;
    let p_bar = counts
        .iter()
        .map(|row| (row.iter().map(|&c| (c * c) as f64).sum::<f64>() - r) / (r * (r - 1.0)))
        .sum::<f64>()
        / n_items;
    let p_e: f64 = (0..k)
        .map(|j| {
            let pj = counts.iter().map(|row| row[j] as f64).sum::<f64>() / (n_items * r);
            pj * pj
        })
        .sum();
    if (1.0 - p_e).abs() < 1e-15 {
        return Err(StatsError::KappaUndefined);
    }
    Ok((p_bar - p_e) / (1.0 - p_e))
}
