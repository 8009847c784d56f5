//! Two-sided Wilcoxon rank-sum (Mann-Whitney U) test.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::StatsError;

/// Samples up to this combined size without ties use the exact null
/// distribution.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankSumResult {
    /// U statistic of the first sample.
    pub u_a: f64,
    pub u_b: f64,
    pub p_value: f64,
    pub method: Method,
}

/// 1-based midranks of `values`.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Number of ways to reach each U value with `m` and `n` observations:
/// `f(m, n, u) = f(m - 1, n, u - n) + f(m, n - 1, u)`.
pub fn u_distribution(m: usize, n: usize) -> Vec<f64> {
    // table[i][j] holds the counts for sizes (i, j)
    let mut table: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); n + 1]; m + 1];
    for i in 0..=m {
        for j in 0..=n {
            table[i][j] = if i == 0 || j == 0 {
                vec![1.0]
            } else {
                let mut v = vec![0.0; i * j + 1];
                for (u, c) in table[i - 1][j].iter().enumerate() {
                    v[u + j] += c;
                }
                for (u, c) in table[i][j - 1].iter().enumerate() {
                    v[u] += c;
                }
                v
            };
        }
    }
    std::mem::take(&mut table[m][n])
}

fn validate(sample: &[f64]) -> Result<(), StatsError> {
    if sample.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    Ok(())
}

pub fn wilcoxon_rank_sum(sample_a: &[f64], sample_b: &[f64]) -> Result<RankSumResult, StatsError> {
    validate(sample_a)?;
    validate(sample_b)?;
    let (na, nb) = (sample_a.len(), sample_b.len());
    let all: Vec<f64> = sample_a.iter().chain(sample_b).copied().collect();
    let ranks = midranks(&all);
    let r_a: f64 = ranks[..na].iter().sum();
    let u_a = r_a - (na * (na + 1)) as f64 / 2.0;
    let u_b = (na * nb) as f64 - u_a;

    let mut sorted = all.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut ties = false;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        if t > 1.0 {
            ties = true;
            tie_term += t * t * t - t;
        }
        i = j + 1;
    }

    if na + nb <= EXACT_LIMIT && !ties {
        let dist = u_distribution(na, nb);
        let total: f64 = dist.iter().sum();
        // U is an integer when there are no ties
        let u = u_a.round() as usize;
        let lower: f64 = dist[..=u].iter().sum::<f64>() / total;
        let upper: f64 = dist[u..].iter().sum::<f64>() / total;
        let p = (2.0 * lower.min(upper)).min(1.0);
        return Ok(RankSumResult {
            u_a,
            u_b,
            p_value: p,
            method: Method::Exact,
        });
    }

    let n = (na + nb) as f64;
    let mean = (na * nb) as f64 / 2.0;
    let var = (na * nb) as f64 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    let p = if var <= 0.0 {
        1.0
    } else {
        let z = ((u_a - mean).abs() - 0.5).max(0.0) / var.sqrt();
        let std = Normal::standard();
        (2.0 * (1.0 - std.cdf(z))).min(1.0)
    };
    Ok(RankSumResult {
        u_a,
        u_b,
        p_value: p,
        method: Method::Normal,
    })
}
