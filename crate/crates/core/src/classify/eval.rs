//! Accuracy/precision/recall/F1 and stratified k-fold cross-validation.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dataset::LabeledExample;
use super::{Classifier, ClassifyError, Form, Quality, Target, Verdict};

/// Binary metrics with Task (form) or Good (quality) as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalMetrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    /// No positive predictions; precision reported as 0.
    #[serde(default)]
    pub precision_undefined: bool,
    /// No positive gold labels; recall reported as 0.
    #[serde(default)]
    pub recall_undefined: bool,
}

impl EvalMetrics {
    pub fn from_counts(tp: usize, fp: usize, tn: usize, fn_: usize) -> EvalMetrics {
        let total = tp + fp + tn + fn_;
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        EvalMetrics {
            accuracy: ratio(tp + tn, total),
            precision,
            recall,
            f1,
            tp,
            fp,
            tn,
            fn_,
            precision_undefined: tp + fp == 0,
            recall_undefined: tp + fn_ == 0,
        }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }
}

fn positive(v: &Verdict, target: Target) -> bool {
    match target {
        Target::Form => v.form == Form::Task,
        Target::Quality => v.quality == Quality::Good,
    }
}

fn gold_positive(ex: &LabeledExample, target: Target) -> bool {
    match target {
        Target::Form => ex.form_label == Form::Task,
        Target::Quality => ex.quality_label == Quality::Good,
    }
}

pub fn evaluate(predictions: &[Verdict], gold: &[LabeledExample], target: Target) -> Result<EvalMetrics, ClassifyError> {
    if predictions.len() != gold.len() {
        return Err(ClassifyError::LengthMismatch {
            predictions: predictions.len(),
            gold: gold.len(),
        });
    }
    if gold.is_empty() {
        return Err(ClassifyError::EmptyEvaluation);
    }
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    for (p, g) in predictions.iter().zip(gold) {
        match (positive(p, target), gold_positive(g, target)) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fn_ += 1,
        }
    }
    Ok(EvalMetrics::from_counts(tp, fp, tn, fn_))
}

/// Fold index for every example. Examples are grouped by target label,
/// each group is shuffled, and the concatenation is dealt round-robin.
pub fn fold_assignment(dataset: &[LabeledExample], k: usize, target: Target, seed: u64) -> Result<Vec<usize>, ClassifyError> {
    if k < 2 || k > dataset.len() {
        return Err(ClassifyError::FoldsOutOfRange { k, n: dataset.len() });
    }
    let mut groups: BTreeMap<bool, Vec<usize>> = BTreeMap::new();
    for (i, ex) in dataset.iter().enumerate() {
        groups.entry(!gold_positive(ex, target)).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = Vec::with_capacity(dataset.len());
    for idx in groups.values_mut() {
        idx.shuffle(&mut rng);
        order.extend_from_slice(idx);
    }
    let mut folds = vec![0; dataset.len()];
    for (pos, &i) in order.iter().enumerate() {
        folds[i] = pos % k;
    }
    Ok(folds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold: usize,
    pub test_size: usize,
    pub metrics: EvalMetrics,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub target: Target,
    pub k: usize,
    pub seed: u64,
    pub folds: Vec<FoldResult>,
    pub mean: MetricSummary,
    /// Sample standard deviation across folds.
    pub stdev: MetricSummary,
}

fn summarize(folds: &[FoldResult]) -> (MetricSummary, MetricSummary) {
    let pick: [fn(&EvalMetrics) -> f64; 4] = [|m| m.accuracy, |m| m.precision, |m| m.recall, |m| m.f1];
    let n = folds.len() as f64;
    let mut mean = [0.0; 4];
    let mut sd = [0.0; 4];
    for (j, f) in pick.iter().enumerate() {
        let vals: Vec<f64> = folds.iter().map(|r| f(&r.metrics)).collect();
        let m = vals.iter().sum::<f64>() / n;
        mean[j] = m;
        sd[j] = if folds.len() > 1 {
            (vals.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
    }
    let s = |a: [f64; 4]| MetricSummary {
        accuracy: a[0],
        precision: a[1],
        recall: a[2],
        f1: a[3],
    };
    (s(mean), s(sd))
}

/// Trains on k-1 folds and tests on the remaining one, for every fold.
pub fn crossvalidate(
    dataset: &[LabeledExample],
    k: usize,
    classifier: &mut dyn Classifier,
    target: Target,
    seed: u64,
) -> Result<CrossValidation, ClassifyError> {
    let folds = fold_assignment(dataset, k, target, seed)?;
    let mut results = Vec::with_capacity(k);
    for fold in 0..k {
        let train: Vec<LabeledExample> = dataset.iter().zip(&folds).filter(|(_, &f)| f != fold).map(|(e, _)| e.clone()).collect();
        let test: Vec<LabeledExample> = dataset.iter().zip(&folds).filter(|(_, &f)| f == fold).map(|(e, _)| e.clone()).collect();
        classifier.fit(&train)?;
        let mut preds = Vec::with_capacity(test.len());
        for ex in &test {
            let diff = ex.diff();
            preds.push(classifier.classify(&ex.todo(), Some(&diff))?);
        }
        results.push(FoldResult {
            fold,
            test_size: test.len(),
            metrics: evaluate(&preds, &test, target)?,
        });
    }
    let (mean, stdev) = summarize(&results);
    Ok(CrossValidation {
        target,
        k,
        seed,
        folds: results,
        mean,
        stdev,
    })
}
