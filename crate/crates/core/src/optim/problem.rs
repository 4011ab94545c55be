use alloc::vec::Vec;

use crate::answers::AnswerKey;
use crate::alphabet::LabelId;
use crate::error::{bail, Result};
use crate::fusion::{fuse_column, MethodTag, TrustWeights};
use crate::matrix::SignedMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Penalty {
    /// `Σ w_i²`
    L2,
    /// `Σ |w_i|`
    L1,
}

impl Penalty {
    pub fn method(self) -> MethodTag {
        match self {
            Penalty::L2 => MethodTag::SupportVectorMachine,
            Penalty::L1 => MethodTag::ProfessionalSearch,
        }
    }

    pub fn value(self, weights: &[f64]) -> f64 {
        match self {
            Penalty::L2 => weights.iter().map(|w| w * w).sum(),
            Penalty::L1 => weights.iter().map(|w| w.abs()).sum(),
        }
    }
}

/// Training set for the hinge objective: one sparse sample per training
/// query over the agents, each with a ±1 target.
#[derive(Debug, Clone, PartialEq)]
pub struct HingeProblem {
    num_features: usize,
    samples: Vec<Vec<(usize, f64)>>,
    targets: Vec<f64>,
    lambda: f64,
    penalty: Penalty,
    fit_bias: bool,
}

impl HingeProblem {
    pub fn new(
        num_features: usize,
        samples: Vec<Vec<(usize, f64)>>,
        targets: Vec<f64>,
        lambda: f64,
        penalty: Penalty,
        fit_bias: bool,
    ) -> Result<Self> {
        if samples.len() != targets.len() {
            bail!(Shape, "{} samples but {} targets", samples.len(), targets.len());
        }
        if samples.is_empty() {
            bail!(Argument, "a hinge problem needs at least one sample");
        }
        if let Some(t) = targets.iter().find(|&&t| t != 1.0 && t != -1.0) {
            bail!(Argument, "targets must be ±1, got {t}");
        }
        for sample in &samples {
            for &(i, x) in sample {
                if i >= num_features {
                    bail!(Shape, "feature index {i} out of range for {num_features} agents");
                }
                if !x.is_finite() {
                    bail!(Numeric, "non-finite sample value {x}");
                }
            }
        }
        check_lambda(lambda)?;
        Ok(HingeProblem { num_features, samples, targets, lambda, penalty, fit_bias })
    }

    /// Samples are the signed columns of the training queries; the target is
    /// `+1` where the key says `positive`.
    pub fn from_signed(
        signed: &SignedMatrix,
        key: &AnswerKey,
        train: &[usize],
        positive: LabelId,
        lambda: f64,
        penalty: Penalty,
        fit_bias: bool,
    ) -> Result<Self> {
        let mut samples = Vec::with_capacity(train.len());
        let mut targets = Vec::with_capacity(train.len());
        for &j in train {
            if j >= signed.num_queries() {
                bail!(Shape, "training query {j} out of range");
            }
            let truth = key.require(j)?;
            samples.push(signed.column(j).to_vec());
            targets.push(if truth == positive { 1.0 } else { -1.0 });
        }
        Self::new(signed.num_agents(), samples, targets, lambda, penalty, fit_bias)
    }

    pub fn num_features(&self) -> usize {
        self.num_features
    }

    pub fn num_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[Vec<(usize, f64)>] {
        &self.samples
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn penalty(&self) -> Penalty {
        self.penalty
    }

    pub fn fit_bias(&self) -> bool {
        self.fit_bias
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(HingeProblem { lambda, ..self.clone() })
    }

    /// The same problem with sample `k` held out.
    pub fn without_sample(&self, k: usize) -> Result<Self> {
        if self.samples.len() < 2 || k >= self.samples.len() {
            bail!(Argument, "cannot hold out sample {k} of {}", self.samples.len());
        }
        let mut out = self.clone();
        out.samples.remove(k);
        out.targets.remove(k);
        Ok(out)
    }

    /// Raw score `b + w·x` of sample `k`.
    pub fn score(&self, k: usize, weights: &TrustWeights) -> f64 {
        fuse_column(&self.samples[k], weights)
    }

    /// Mean hinge loss of `(weights, bias)`.
    pub(crate) fn hinge(&self, weights: &[f64], bias: f64) -> f64 {
        let mut total = 0.0;
        for (sample, &t) in self.samples.iter().zip(&self.targets) {
            let s = sample.iter().fold(bias, |acc, &(i, x)| acc + weights[i] * x);
            let loss = 1.0 - t * s;
            if loss > 0.0 {
                total += loss;
            }
        }
        total / self.samples.len() as f64
    }

    pub(crate) fn objective_raw(&self, weights: &[f64], bias: f64) -> f64 {
        self.hinge(weights, bias) + self.lambda * self.penalty.value(weights)
    }

    /// Smallest L1 strength at which the solver, started from zero, keeps every
    /// weight at exactly zero.
    ///
    /// This is the largest hinge subgradient coordinate at `w = 0` with the
    /// intercept at its best value. Without an intercept, or with balanced
    /// targets, every sample is active there and the value reduces to
    /// `max_i |(1/T) Σ_j t_j x_ij|`. With unbalanced targets the intercept
    /// sits on a kink, so the one-sided subgradient using only the minority
    /// samples is included as well.
    pub fn l1_shutdown_lambda(&self) -> f64 {
        let n = self.samples.len() as f64;
        let pos = self.targets.iter().filter(|&&t| t > 0.0).count();
        let neg = self.targets.len() - pos;
        let mut all = alloc::vec![0.0f64; self.num_features];
        let mut minority = alloc::vec![0.0f64; self.num_features];
        for (sample, &t) in self.samples.iter().zip(&self.targets) {
            let in_minority = (t > 0.0 && pos < neg) || (t < 0.0 && neg < pos);
            for &(i, x) in sample {
                all[i] += t * x;
                if in_minority {
                    minority[i] += t * x;
                }
            }
        }
        let peak = |v: &[f64]| v.iter().fold(0.0f64, |m, g| m.max(g.abs())) / n;
        if self.fit_bias && pos != neg {
            peak(&all).max(peak(&minority))
        } else {
            peak(&all)
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || lambda < 0.0 {
        bail!(Argument, "lambda must be finite and non-negative, got {lambda}");
    }
    Ok(())
}

/// `(1/T) Σ_j max(0, 1 - t_j (b + w·x_j)) + λ R(w)`; the bias is not penalized.
pub fn objective(problem: &HingeProblem, weights: &TrustWeights) -> Result<f64> {
    if weights.len() != problem.num_features {
        bail!(Shape, "{} weights for {} agents", weights.len(), problem.num_features);
    }
    Ok(problem.objective_raw(&weights.weights, weights.bias))
}
