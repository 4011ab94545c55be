use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{LabelAlphabet, LabelId};
use crate::answers::AnswerKey;
use crate::error::{bail, Result};
use crate::matrix::{ObservationMatrix, SignedMatrix};

/// Which aggregation method produced a set of weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodTag {
    MajorityVotes,
    ExpectationMaximization,
    WeightedAveraging,
    ExponentialWeights,
    SupportVectorMachine,
    ProfessionalSearch,
}

impl MethodTag {
    pub const ALL: [MethodTag; 6] = [
        MethodTag::MajorityVotes,
        MethodTag::ExpectationMaximization,
        MethodTag::WeightedAveraging,
        MethodTag::ExponentialWeights,
        MethodTag::SupportVectorMachine,
        MethodTag::ProfessionalSearch,
    ];

    /// Short command-line name.
    pub fn name(self) -> &'static str {
        match self {
            MethodTag::MajorityVotes => "majority",
            MethodTag::ExpectationMaximization => "em",
            MethodTag::WeightedAveraging => "weighted-avg",
            MethodTag::ExponentialWeights => "exp-weights",
            MethodTag::SupportVectorMachine => "svm",
            MethodTag::ProfessionalSearch => "professional",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            MethodTag::MajorityVotes => "majority votes",
            MethodTag::ExpectationMaximization => "expectation maximization",
            MethodTag::WeightedAveraging => "weighted averaging",
            MethodTag::ExponentialWeights => "exponential weighted algorithm",
            MethodTag::SupportVectorMachine => "support vector machine",
            MethodTag::ProfessionalSearch => "professional search",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        MethodTag::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn is_supervised(self) -> bool {
        !matches!(self, MethodTag::MajorityVotes | MethodTag::ExpectationMaximization)
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-agent weights of trust plus an intercept.
#[derive(Debug, Clone, PartialEq)]
pub struct TrustWeights {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub method: MethodTag,
}

impl TrustWeights {
    pub fn new(weights: Vec<f64>, bias: f64, method: MethodTag) -> Self {
        TrustWeights { weights, bias, method }
    }

    pub fn uniform(num_agents: usize, method: MethodTag) -> Self {
        let w = 1.0 / num_agents as f64;
        TrustWeights::new(vec![w; num_agents], 0.0, method)
    }

    pub fn zeros(num_agents: usize, method: MethodTag) -> Self {
        TrustWeights::new(vec![0.0; num_agents], 0.0, method)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Predicted label and per-label fused score for each query.
///
/// The prediction is always the argmax of the score vector, ties going to the
/// alphabet-smallest label.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FusionResult {
    predictions: BTreeMap<usize, LabelId>,
    scores: BTreeMap<usize, Vec<f64>>,
}

/// Index of the largest score; the first (smallest label) wins ties.
pub(crate) fn argmax(scores: &[f64]) -> LabelId {
    let mut best = 0;
    for (k, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = k;
        }
    }
    LabelId::new(best)
}

impl FusionResult {
    pub fn from_scores<I>(scores: I) -> Self
    where
        I: IntoIterator<Item = (usize, Vec<f64>)>,
    {
        let scores: BTreeMap<usize, Vec<f64>> = scores.into_iter().collect();
        let predictions = scores.iter().map(|(&q, s)| (q, argmax(s))).collect();
        FusionResult { predictions, scores }
    }

    /// Score vectors from a signed binary score: `+s` on `positive`, `-s` on
    /// `negative`, so the argmax matches [`decide_binary`].
    pub fn from_binary_scores<I>(alphabet: &LabelAlphabet, positive: LabelId, negative: LabelId, scores: I) -> Self
    where
        I: IntoIterator<Item = (usize, f64)>,
    {
        let k = alphabet.len();
        FusionResult::from_scores(scores.into_iter().map(|(q, s)| {
            let mut v = vec![0.0; k];
            v[positive.index()] = s;
            v[negative.index()] = -s;
            (q, v)
        }))
    }

    pub fn prediction(&self, query: usize) -> Option<LabelId> {
        self.predictions.get(&query).copied()
    }

    pub fn scores(&self, query: usize) -> Option<&[f64]> {
        self.scores.get(&query).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.predictions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.predictions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, LabelId, &[f64])> + '_ {
        self.predictions.iter().map(move |(&q, &l)| (q, l, self.scores[&q].as_slice()))
    }
}

/// `bias + Σ_i w_i x_ij` for every query; missing entries contribute 0.
pub fn fuse(signed: &SignedMatrix, weights: &TrustWeights) -> Result<Vec<f64>> {
    if weights.len() != signed.num_agents() {
        bail!(Shape, "{} weights for {} agents", weights.len(), signed.num_agents());
    }
    Ok((0..signed.num_queries()).map(|q| fuse_column(signed.column(q), weights)).collect())
}

pub(crate) fn fuse_column(column: &[(usize, f64)], weights: &TrustWeights) -> f64 {
    column.iter().fold(weights.bias, |acc, &(i, x)| acc + weights.weights[i] * x)
}

/// Sign rule for a binary score; a zero score goes to the smaller label.
pub fn decide_binary(score: f64, positive: LabelId, negative: LabelId) -> LabelId {
    if score > 0.0 {
        positive
    } else if score < 0.0 {
        negative
    } else {
        positive.min(negative)
    }
}

/// Per-label weighted vote: the score of label `c` on query `j` is the total
/// weight of the agents who reported `c`. Agrees with `fuse` + `decide_binary`
/// on binary alphabets when the bias is zero.
pub fn weighted_vote(matrix: &ObservationMatrix, weights: &TrustWeights) -> Result<FusionResult> {
    if weights.len() != matrix.num_agents() {
        bail!(Shape, "{} weights for {} agents", weights.len(), matrix.num_agents());
    }
    let k = matrix.alphabet().len();
    Ok(FusionResult::from_scores((0..matrix.num_queries()).map(|q| {
        let mut v = vec![0.0; k];
        for o in matrix.column(q) {
            v[o.label.index()] += weights.weights[o.agent];
        }
        (q, v)
    })))
}

/// Fraction of `over` whose prediction matches the key.
pub fn accuracy(result: &FusionResult, key: &AnswerKey, over: &[usize]) -> Result<f64> {
    if over.is_empty() {
        bail!(Evaluation, "accuracy over an empty query set");
    }
    let mut correct = 0usize;
    for &q in over {
        let Some(truth) = key.get(q) else {
            bail!(Evaluation, "query {q} has no known answer");
        };
        let Some(pred) = result.prediction(q) else {
            bail!(Evaluation, "no prediction for query {q}");
        };
        correct += usize::from(pred == truth);
    }
    Ok(correct as f64 / over.len() as f64)
}
