use alloc::vec::Vec;

use crate::alphabet::LabelId;
use crate::answers::AnswerKey;
use crate::error::{bail, Result};
use crate::fusion::TrustWeights;
use crate::matrix::{encode_binary_id, ObservationMatrix, SignedMatrix};
use crate::optim::{train_hinge, HingeProblem, Penalty, SolverConfig};

/// Strictly increasing regularization strengths in `[0, 200]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid {
    values: Vec<f64>,
}

impl LambdaGrid {
    pub const MAX: f64 = 200.0;

    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            bail!(Argument, "lambda grid is empty");
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=Self::MAX).contains(*v)) {
            bail!(Argument, "lambda {v} outside [0, {}]", Self::MAX);
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            bail!(Argument, "lambda grid must be strictly increasing");
        }
        Ok(LambdaGrid { values })
    }

    /// `{0} ∪ {5, 10, …, 200}` for L1; the same without 0 for L2.
    pub fn default_for(penalty: Penalty) -> Self {
        let sweep = (1..=40).map(|k| 5.0 * k as f64);
        let values = match penalty {
            Penalty::L1 => core::iter::once(0.0).chain(sweep).collect(),
            Penalty::L2 => sweep.collect(),
        };
        LambdaGrid { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Held-out error along the grid and the selected strength.
#[derive(Debug, Clone, PartialEq)]
pub struct CvReport {
    /// `(lambda, mean held-out 0/1 error)` in grid order.
    pub per_lambda_error: Vec<(f64, f64)>,
    pub chosen: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvConfig {
    pub solver: SolverConfig,
    pub fit_bias: bool,
    /// Grid values are divided by `|train|` before reaching the solver when
    /// set; see `solver_lambda`.
    pub per_sample_lambda: bool,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig { solver: SolverConfig::default(), fit_bias: true, per_sample_lambda: true }
    }
}

impl CvConfig {
    /// Strength handed to the solver for a grid value on `n` samples.
    pub fn solver_lambda(&self, lambda: f64, n: usize) -> f64 {
        if self.per_sample_lambda {
            lambda / n as f64
        } else {
            lambda
        }
    }
}

/// How the regularization strength is picked.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaChoice {
    Fixed(f64),
    CrossValidate(LambdaGrid),
}

pub(crate) fn loocv_signed(
    problem: &HingeProblem,
    grid: &LambdaGrid,
    config: &CvConfig,
) -> Result<CvReport> {
    let n = problem.num_samples();
    if n < 2 {
        bail!(Argument, "leave-one-out needs at least two training queries, got {n}");
    }
    if problem.penalty() == Penalty::L2 && grid.values()[0] == 0.0 {
        bail!(Argument, "the L2 grid must not contain lambda = 0");
    }
    let mut per_lambda_error = Vec::with_capacity(grid.values().len());
    for &lambda in grid.values() {
        let mut errors = 0usize;
        for k in 0..n {
            let fold = problem.without_sample(k)?.with_lambda(config.solver_lambda(lambda, n - 1))?;
            let (w, _) = train_hinge(&fold, &config.solver)?;
            // positive iff score > 0: a zero score falls to the smaller label,
            // which is the negative side of every binary view built here
            let predicted_positive = problem.score(k, &w) > 0.0;
            errors += usize::from(predicted_positive != (problem.targets()[k] > 0.0));
        }
        per_lambda_error.push((lambda, errors as f64 / n as f64));
    }
    let mut chosen = per_lambda_error[0];
    for &(lambda, err) in &per_lambda_error[1..] {
        if err <= chosen.1 {
            chosen = (lambda, err);
        }
    }
    Ok(CvReport { per_lambda_error, chosen: chosen.0 })
}

fn problem_for(
    signed: &SignedMatrix,
    key: &AnswerKey,
    train: &[usize],
    positive: LabelId,
    penalty: Penalty,
    config: &CvConfig,
) -> Result<HingeProblem> {
    HingeProblem::from_signed(signed, key, train, positive, 0.0, penalty, config.fit_bias)
}

/// LOOCV over `grid` on a binary alphabet (positive = larger label).
pub fn loocv_select(
    matrix: &ObservationMatrix,
    key: &AnswerKey,
    train: &[usize],
    penalty: Penalty,
    grid: &LambdaGrid,
    config: &CvConfig,
) -> Result<CvReport> {
    let (positive, _) = matrix.alphabet().binary_pair()?;
    loocv_select_for(matrix, key, train, positive, penalty, grid, config)
}

/// LOOCV for the binary view "`positive` vs everything else".
pub fn loocv_select_for(
    matrix: &ObservationMatrix,
    key: &AnswerKey,
    train: &[usize],
    positive: LabelId,
    penalty: Penalty,
    grid: &LambdaGrid,
    config: &CvConfig,
) -> Result<CvReport> {
    if train.len() < 2 {
        bail!(Argument, "leave-one-out needs at least two training queries, got {}", train.len());
    }
    let signed = encode_binary_id(matrix, positive);
    let problem = problem_for(&signed, key, train, positive, penalty, config)?;
    loocv_signed(&problem, grid, config)
}

/// Weights for one binary view, with the strength that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryModel {
    pub positive: LabelId,
    pub weights: TrustWeights,
    pub lambda: f64,
    pub cv: Option<CvReport>,
}

pub(crate) fn train_view(
    signed: &SignedMatrix,
    key: &AnswerKey,
    train: &[usize],
    positive: LabelId,
    penalty: Penalty,
    choice: &LambdaChoice,
    config: &CvConfig,
) -> Result<BinaryModel> {
    let problem = problem_for(signed, key, train, positive, penalty, config)?;
    let (lambda, cv) = match choice {
        LambdaChoice::Fixed(l) => (*l, None),
        LambdaChoice::CrossValidate(grid) => {
            let report = loocv_signed(&problem, grid, config)?;
            (report.chosen, Some(report))
        }
    };
    let (weights, _) = train_hinge(&problem.with_lambda(config.solver_lambda(lambda, train.len()))?, &config.solver)?;
    Ok(BinaryModel { positive, weights, lambda, cv })
}

/// Trains the hinge model on a binary alphabet, choosing lambda as asked.
pub fn train_binary(
    matrix: &ObservationMatrix,
    key: &AnswerKey,
    train: &[usize],
    penalty: Penalty,
    choice: &LambdaChoice,
    config: &CvConfig,
) -> Result<BinaryModel> {
    let (positive, _) = matrix.alphabet().binary_pair()?;
    let signed = encode_binary_id(matrix, positive);
    train_view(&signed, key, train, positive, penalty, choice, config)
}
