//! Two-class logistic model over unigram and bigram counts.
//!
//! Features come from the TODO tokens (prefixed `t:`) and the diff tokens
//! (prefixed `d:`); each example's count vector is scaled to unit L2 norm.
//! Training is full-batch gradient descent on mean cross-entropy plus
//! `l2 / 2 * ||W||^2` (biases are not penalized).
//!
//! With unit-norm features plus a bias input the loss gradient is
//! Lipschitz with constant at most `1 + l2`, so any learning rate up to
//! [`stability_bound`] never increases the training loss.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dataset::LabeledExample;
use super::{Classifier, ClassifyError, Form, Quality, Target, Verdict, VerdictSource};
use crate::normalize::{NormalizedDiff, NormalizedTodo};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Hyperparams {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
    pub seed: u64,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            learning_rate: 0.5,
            epochs: 200,
            l2: 1e-4,
            seed: 7,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(ClassifyError::Hyperparameter(format!("learning_rate {}", self.learning_rate)));
        }
        if !(self.l2.is_finite() && self.l2 >= 0.0) {
            return Err(ClassifyError::Hyperparameter(format!("l2 {}", self.l2)));
        }
        Ok(())
    }
}

/// Largest learning rate for which full-batch descent is monotone.
pub fn stability_bound(l2: f64) -> f64 {
    1.0 / (1.0 + l2)
}

/// Sparse feature vector: sorted (index, value) pairs.
pub type Features = Vec<(usize, f64)>;

/// Raw n-gram counts keyed by feature name.
pub fn ngram_counts(todo_tokens: &[String], diff_tokens: &[String]) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    for (prefix, toks) in [("t:", todo_tokens), ("d:", diff_tokens)] {
        for t in toks {
            *m.entry(format!("{prefix}{t}")).or_insert(0.0) += 1.0;
        }
        for w in toks.windows(2) {
            *m.entry(format!("{prefix}{} {}", w[0], w[1])).or_insert(0.0) += 1.0;
        }
    }
    m
}

fn vectorize(vocab: &BTreeMap<String, usize>, todo_tokens: &[String], diff_tokens: &[String]) -> Features {
    let mut v: Features = ngram_counts(todo_tokens, diff_tokens)
        .into_iter()
        .filter_map(|(k, c)| vocab.get(&k).map(|&i| (i, c)))
        .collect();
    v.sort_unstable_by_key(|&(i, _)| i);
    let norm = v.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (_, c) in &mut v {
            *c /= norm;
        }
    }
    v
}

/// Index 0 is the positive class (Task or Good), index 1 the negative one.
fn label_index(ex: &LabeledExample, target: Target) -> usize {
    match target {
        Target::Form => usize::from(ex.form_label != Form::Task),
        Target::Quality => usize::from(ex.quality_label != Quality::Good),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexicalModel {
    pub format_version: u32,
    pub target: Target,
    pub vocabulary: BTreeMap<String, usize>,
    /// One weight vector per class, each of vocabulary length.
    pub weights: [Vec<f64>; 2],
    pub bias: [f64; 2],
    pub hyperparams: Hyperparams,
    pub final_loss: f64,
}

/// Training inputs already mapped onto a vocabulary.
#[derive(Debug, Clone)]
pub struct Problem {
    pub features: Vec<Features>,
    pub labels: Vec<usize>,
    pub dim: usize,
    pub l2: f64,
}

/// Flat parameter layout: `[w0 (dim), w1 (dim), b0, b1]`.
pub fn param_len(dim: usize) -> usize {
    2 * dim + 2
}

fn logits(params: &[f64], dim: usize, x: &Features) -> [f64; 2] {
    let mut z = [params[2 * dim], params[2 * dim + 1]];
    for &(i, v) in x {
        z[0] += params[i] * v;
        z[1] += params[dim + i] * v;
    }
    z
}

/// Numerically stable two-class softmax.
fn softmax(z: [f64; 2]) -> [f64; 2] {
    let p0 = 1.0 / (1.0 + (z[1] - z[0]).exp());
    [p0, 1.0 - p0]
}

fn log_softmax(z: [f64; 2], k: usize) -> f64 {
    let m = z[0].max(z[1]);
    z[k] - m - ((z[0] - m).exp() + (z[1] - m).exp()).ln()
}

impl Problem {
    /// Objective value and its gradient at `params`.
    pub fn loss_and_gradient(&self, params: &[f64]) -> (f64, Vec<f64>) {
        let dim = self.dim;
        let n = self.features.len() as f64;
        let mut grad = vec![0.0; param_len(dim)];
        let mut loss = 0.0;
        for (x, &y) in self.features.iter().zip(&self.labels) {
            let z = logits(params, dim, x);
            loss -= log_softmax(z, y);
            let p = softmax(z);
            let d = [p[0] - f64::from(u8::from(y == 0)), p[1] - f64::from(u8::from(y == 1))];
            for &(i, v) in x {
                grad[i] += d[0] * v;
                grad[dim + i] += d[1] * v;
            }
            grad[2 * dim] += d[0];
            grad[2 * dim + 1] += d[1];
        }
        loss /= n;
        for g in &mut grad {
            *g /= n;
        }
        let mut penalty = 0.0;
        for i in 0..2 * dim {
            penalty += params[i] * params[i];
            grad[i] += self.l2 * params[i];
        }
        (loss + 0.5 * self.l2 * penalty, grad)
    }
}

/// Output of [`train_lexical`].
#[derive(Debug, Clone)]
pub struct TrainReport {
    pub model: LexicalModel,
    /// Objective before each epoch's update, followed by the final value.
    pub losses: Vec<f64>,
}

pub fn build_vocabulary(dataset: &[LabeledExample]) -> BTreeMap<String, usize> {
    let mut keys: Vec<String> = dataset
        .iter()
        .flat_map(|ex| ngram_counts(&ex.todo_tokens, &ex.diff_tokens).into_keys())
        .collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect()
}

pub fn problem_for(dataset: &[LabeledExample], target: Target, vocab: &BTreeMap<String, usize>, l2: f64) -> Problem {
    Problem {
        features: dataset.iter().map(|ex| vectorize(vocab, &ex.todo_tokens, &ex.diff_tokens)).collect(),
        labels: dataset.iter().map(|ex| label_index(ex, target)).collect(),
        dim: vocab.len(),
        l2,
    }
}

pub fn train_lexical(dataset: &[LabeledExample], target: Target, hp: &Hyperparams) -> Result<TrainReport, ClassifyError> {
    hp.validate()?;
    if dataset.len() < 2 {
        return Err(ClassifyError::TooFewExamples(2));
    }
    let first = label_index(&dataset[0], target);
    if dataset.iter().all(|ex| label_index(ex, target) == first) {
        let name = match (target, first) {
            (Target::Form, 0) => "Task",
            (Target::Form, _) => "Notice",
            (Target::Quality, 0) => "Good",
            (Target::Quality, _) => "Bad",
        };
        return Err(ClassifyError::SingleClass(name.to_string()));
    }
    let vocab = build_vocabulary(dataset);
    if vocab.is_empty() {
        return Err(ClassifyError::EmptyVocabulary);
    }
    let problem = problem_for(dataset, target, &vocab, hp.l2);
    let dim = problem.dim;

    let mut rng = ChaCha8Rng::seed_from_u64(hp.seed);
    let mut params: Vec<f64> = (0..2 * dim).map(|_| rng.random_range(-0.01..0.01)).collect();
    params.extend([0.0, 0.0]);

    let mut losses = Vec::with_capacity(hp.epochs + 1);
    for _ in 0..hp.epochs {
        let (loss, grad) = problem.loss_and_gradient(&params);
        losses.push(loss);
        for (p, g) in params.iter_mut().zip(&grad) {
            *p -= hp.learning_rate * g;
        }
    }
    let final_loss = problem.loss_and_gradient(&params).0;
    losses.push(final_loss);

    let bias = [params[2 * dim], params[2 * dim + 1]];
    params.truncate(2 * dim);
    let w1 = params.split_off(dim);
    Ok(TrainReport {
        model: LexicalModel {
            format_version: FORMAT_VERSION,
            target,
            vocabulary: vocab,
            weights: [params, w1],
            bias,
            hyperparams: hp.clone(),
            final_loss,
        },
        losses,
    })
}

impl LexicalModel {
    pub fn check(&self) -> Result<(), ClassifyError> {
        if self.format_version != FORMAT_VERSION {
            return Err(ClassifyError::ModelFormat(format!("unsupported format_version {}", self.format_version)));
        }
        if self.vocabulary.is_empty() {
            return Err(ClassifyError::Untrained);
        }
        let n = self.vocabulary.len();
        if self.weights.iter().any(|w| w.len() != n) {
            return Err(ClassifyError::ModelFormat("weight length differs from vocabulary size".into()));
        }
        if self.vocabulary.values().any(|&i| i >= n) {
            return Err(ClassifyError::ModelFormat("vocabulary index out of range".into()));
        }
        Ok(())
    }

    /// (positive, negative) class probabilities.
    pub fn predict_proba(&self, todo_tokens: &[String], diff_tokens: &[String]) -> Result<[f64; 2], ClassifyError> {
        self.check()?;
        let x = vectorize(&self.vocabulary, todo_tokens, diff_tokens);
        let mut z = self.bias;
        for (i, v) in x {
            z[0] += self.weights[0][i] * v;
            z[1] += self.weights[1][i] * v;
        }
        Ok(softmax(z))
    }
}

/// A form model and a quality model.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LexicalClassifier {
    pub format_version: u32,
    pub form: Option<LexicalModel>,
    pub quality: Option<LexicalModel>,
    #[serde(default)]
    pub hyperparams: Hyperparams,
}

impl LexicalClassifier {
    pub fn untrained(hyperparams: Hyperparams) -> Self {
        LexicalClassifier {
            format_version: FORMAT_VERSION,
            form: None,
            quality: None,
            hyperparams,
        }
    }

    pub fn train(dataset: &[LabeledExample], hp: &Hyperparams) -> Result<Self, ClassifyError> {
        Ok(LexicalClassifier {
            format_version: FORMAT_VERSION,
            form: Some(train_lexical(dataset, Target::Form, hp)?.model),
            quality: Some(train_lexical(dataset, Target::Quality, hp)?.model),
            hyperparams: hp.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ClassifyError> {
        let m: LexicalClassifier = serde_json::from_str(text).map_err(|e| ClassifyError::ModelFormat(e.to_string()))?;
        if m.format_version != FORMAT_VERSION {
            return Err(ClassifyError::ModelFormat(format!("unsupported format_version {}", m.format_version)));
        }
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<(), ClassifyError> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, ClassifyError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn predict(&self, todo: &NormalizedTodo, diff: Option<&NormalizedDiff>) -> Result<Verdict, ClassifyError> {
        predict_lexical(self, todo, diff)
    }
}

pub fn predict_lexical(model: &LexicalClassifier, todo: &NormalizedTodo, diff: Option<&NormalizedDiff>) -> Result<Verdict, ClassifyError> {
    let (Some(form), Some(quality)) = (&model.form, &model.quality) else {
        return Err(ClassifyError::Untrained);
    };
    let empty = Vec::new();
    let diff_tokens = diff.map_or(&empty, |d| &d.tokens);
    let fp = form.predict_proba(&todo.tokens, diff_tokens)?;
    let qp = quality.predict_proba(&todo.tokens, diff_tokens)?;
    Ok(Verdict::from_probs(fp, qp, VerdictSource::Lexical))
}

impl Classifier for LexicalClassifier {
    fn classify(&mut self, todo: &NormalizedTodo, diff: Option<&NormalizedDiff>) -> Result<Verdict, ClassifyError> {
        let v = self.predict(todo, diff)?;
        Ok(super::tag_subcategory(todo, v))
    }

    fn fit(&mut self, train: &[LabeledExample]) -> Result<(), ClassifyError> {
        *self = LexicalClassifier::train(train, &self.hyperparams)?;
        Ok(())
    }
}
