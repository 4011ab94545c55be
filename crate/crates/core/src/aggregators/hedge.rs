use alloc::vec;
use alloc::vec::Vec;

use super::check_train;
use crate::answers::AnswerKey;
use crate::error::{bail, Result};
use crate::fusion::{MethodTag, TrustWeights};
use crate::math;
use crate::matrix::ObservationMatrix;

/// `sqrt(8 ln m / T)`, the usual Hedge learning rate for losses in `[0, 1]`.
pub fn default_eta(num_agents: usize, num_train: usize) -> f64 {
    if num_agents < 2 || num_train == 0 {
        return 0.0;
    }
    math::sqrt(8.0 * math::ln(num_agents as f64) / num_train as f64)
}

/// Exponentially weighted trust over the training queries.
///
/// Training queries are processed in ascending index order. Each agent that
/// answers a query has its weight multiplied by `exp(-eta)` when wrong and
/// kept when right; silent agents are untouched. Weights are normalized at
/// the end.
pub fn exponential_weighted(matrix: &ObservationMatrix, key: &AnswerKey, train: &[usize], eta: f64) -> Result<TrustWeights> {
    if !eta.is_finite() || eta < 0.0 {
        bail!(Argument, "eta must be finite and non-negative, got {eta}");
    }
    check_train(key, train)?;
    let mut order: Vec<usize> = train.to_vec();
    order.sort_unstable();

    // log-domain: log v_i = -eta * (mistakes so far)
    let mut log_v = vec![0.0f64; matrix.num_agents()];
    for j in order {
        let truth = key.require(j)?;
        for o in matrix.column(j) {
            let loss = if o.label == truth { 0.0 } else { 1.0 };
            log_v[o.agent] -= eta * loss;
        }
    }
    let peak = log_v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let v: Vec<f64> = log_v.iter().map(|&l| math::exp(l - peak)).collect();
    let total: f64 = v.iter().sum();
    let weights = v.iter().map(|x| x / total).collect();
    Ok(TrustWeights::new(weights, 0.0, MethodTag::ExponentialWeights))
}
