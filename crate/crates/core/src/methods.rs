//! One entry point for all six methods on a train/test split.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::aggregators::{
    default_eta, em_infer, exponential_weighted, majority_votes, weighted_averaging, EmConfig,
};
use crate::alphabet::LabelId;
use crate::answers::{AnswerKey, Split};
use crate::error::{bail, Result};
use crate::fusion::{accuracy, weighted_vote, FusionResult, MethodTag, TrustWeights};
use crate::matrix::{encode_binary_id, ObservationMatrix};
use crate::modelsel::{
    em_one_vs_all, one_vs_all_predict, one_vs_all_train, train_binary, CvConfig, CvReport, LambdaChoice, LambdaGrid,
};
use crate::optim::{support, Penalty, DEFAULT_SUPPORT_EPS};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MethodOptions {
    /// Fixed regularization strength; cross-validated when `None`.
    pub lambda: Option<f64>,
    /// Hedge learning rate; `sqrt(8 ln m / T)` when `None`.
    pub eta: Option<f64>,
    /// Grid for cross-validation; the penalty's default grid when `None`.
    pub grid: Option<LambdaGrid>,
    pub em: EmConfig,
    pub cv: CvConfig,
}

/// Weights learned for the whole alphabet (`label == None`) or for one
/// label's binary view.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassWeights {
    pub label: Option<LabelId>,
    pub weights: TrustWeights,
    pub lambda: Option<f64>,
    pub cv: Option<CvReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodRun {
    pub method: MethodTag,
    /// Predictions for every query of the matrix.
    pub result: FusionResult,
    pub models: Vec<ClassWeights>,
    /// Learning rate actually used by the exponential-weights method.
    pub eta: Option<f64>,
}

impl MethodRun {
    /// Agents with a nonzero weight in any of the models.
    pub fn support(&self) -> Vec<usize> {
        let set: BTreeSet<usize> =
            self.models.iter().flat_map(|m| support(&m.weights, DEFAULT_SUPPORT_EPS)).collect();
        set.into_iter().collect()
    }

    pub fn accuracy(&self, key: &AnswerKey, over: &[usize]) -> Result<f64> {
        accuracy(&self.result, key, over)
    }
}

fn whole(weights: TrustWeights) -> ClassWeights {
    ClassWeights { label: None, weights, lambda: None, cv: None }
}

pub fn run_method(
    matrix: &ObservationMatrix,
    key: &AnswerKey,
    split: &Split,
    method: MethodTag,
    options: &MethodOptions,
) -> Result<MethodRun> {
    if method.is_supervised() && split.train.is_empty() {
        bail!(Argument, "{} needs training queries", method.name());
    }
    let alphabet = matrix.alphabet();
    let all: Vec<usize> = (0..matrix.num_queries()).collect();
    let mut eta_used = None;
    let (result, models) = match method {
        MethodTag::MajorityVotes => {
            let (w, r) = majority_votes(matrix)?;
            (r, alloc::vec![whole(w)])
        }
        MethodTag::ExpectationMaximization if alphabet.is_binary() => {
            let (model, r) = em_infer(matrix, None, &options.em)?;
            (r, alloc::vec![whole(model.trust_weights())])
        }
        MethodTag::ExpectationMaximization => {
            let (models, r) = em_one_vs_all(matrix, &options.em)?;
            let models = models
                .iter()
                .enumerate()
                .map(|(c, m)| ClassWeights { label: Some(LabelId::new(c)), weights: m.trust_weights(), lambda: None, cv: None })
                .collect();
            (r, models)
        }
        MethodTag::WeightedAveraging => {
            let w = weighted_averaging(matrix, key, &split.train)?;
            (weighted_vote(matrix, &w)?, alloc::vec![whole(w)])
        }
        MethodTag::ExponentialWeights => {
            let eta = options.eta.unwrap_or_else(|| default_eta(matrix.num_agents(), split.train.len()));
            eta_used = Some(eta);
            let w = exponential_weighted(matrix, key, &split.train, eta)?;
            (weighted_vote(matrix, &w)?, alloc::vec![whole(w)])
        }
        MethodTag::SupportVectorMachine | MethodTag::ProfessionalSearch => {
            let penalty = if method == MethodTag::SupportVectorMachine { Penalty::L2 } else { Penalty::L1 };
            let choice = match options.lambda {
                Some(l) => LambdaChoice::Fixed(l),
                None => LambdaChoice::CrossValidate(options.grid.clone().unwrap_or_else(|| LambdaGrid::default_for(penalty))),
            };
            if alphabet.is_binary() {
                let model = train_binary(matrix, key, &split.train, penalty, &choice, &options.cv)?;
                let (positive, negative) = alphabet.binary_pair()?;
                let signed = encode_binary_id(matrix, positive);
                let scores = crate::fusion::fuse(&signed, &model.weights)?;
                let r = FusionResult::from_binary_scores(alphabet, positive, negative, scores.into_iter().enumerate());
                let cw = ClassWeights { label: None, weights: model.weights, lambda: Some(model.lambda), cv: model.cv };
                (r, alloc::vec![cw])
            } else {
                let model = one_vs_all_train(matrix, key, &split.train, penalty, &choice, &options.cv)?;
                let r = one_vs_all_predict(&model, matrix, &all)?;
                let models = model
                    .classes
                    .into_iter()
                    .map(|c| ClassWeights { label: Some(c.label), weights: c.weights, lambda: Some(c.lambda), cv: c.cv })
                    .collect();
                (r, models)
            }
        }
    };
    Ok(MethodRun { method, result, models, eta: eta_used })
}
