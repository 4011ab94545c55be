use alloc::vec;
use alloc::vec::Vec;

use super::problem::{HingeProblem, Penalty};
use crate::error::{bail, Result};
use crate::fusion::TrustWeights;
use crate::math;

pub const DEFAULT_SUPPORT_EPS: f64 = 1e-8;

// Margins and objective gains below this are rounding noise; treating them as
// zero keeps the trajectory independent of the summation order over agents.
const ROUNDING: f64 = 1e-12;

/// Step size for epoch `t` (starting at 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    /// `1/(λt)` for L2, `1/√t` for L1 (and for L2 when λ = 0).
    Auto,
    /// `scale / t`
    InverseLinear(f64),
    /// `scale / √t`
    InverseSqrt(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub max_epochs: usize,
    pub step: StepSchedule,
    /// Relative decrease of the best objective over `window` epochs below
    /// which training stops.
    pub tol: f64,
    pub window: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_epochs: 2000, step: StepSchedule::Auto, tol: 1e-6, window: 50 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    pub iterations: usize,
    /// Objective of the returned weights.
    pub final_objective: f64,
    /// Best objective seen after each epoch (non-increasing).
    pub objective_trace: Vec<f64>,
    pub converged: bool,
}

fn soft_threshold(v: f64, tau: f64) -> f64 {
    if v > tau {
        v - tau
    } else if v < -tau {
        v + tau
    } else {
        0.0
    }
}

/// Full-batch proximal subgradient descent on the hinge objective.
///
/// Each epoch takes the hinge subgradient over every sample, steps, and then
/// applies the penalty's proximal map: multiplicative shrinkage for L2,
/// soft-thresholding for L1. The intercept takes plain `1/√t` steps since it
/// is not regularized. The best iterate visited is returned.
pub fn train_hinge(problem: &HingeProblem, config: &SolverConfig) -> Result<(TrustWeights, SolverReport)> {
    let lambda = problem.lambda();
    let penalty = problem.penalty();
    if penalty == Penalty::L2 && lambda <= 0.0 {
        bail!(Argument, "the L2 penalty needs a positive lambda");
    }
    if config.max_epochs == 0 {
        bail!(Argument, "max_epochs must be at least 1");
    }
    let step_at = |t: f64| match config.step {
        StepSchedule::Auto if penalty == Penalty::L2 => 1.0 / (lambda * t),
        StepSchedule::Auto => 1.0 / math::sqrt(t),
        StepSchedule::InverseLinear(c) => c / t,
        StepSchedule::InverseSqrt(c) => c / math::sqrt(t),
    };

    let m = problem.num_features();
    let n = problem.num_samples() as f64;
    let samples = problem.samples();
    let targets = problem.targets();

    let mut w = vec![0.0f64; m];
    let mut b = 0.0f64;
    let mut grad = vec![0.0f64; m];
    let mut best_w = w.clone();
    let mut best_b = b;
    let mut best = f64::INFINITY;
    let mut trace = Vec::new();
    let mut converged = false;

    for t in 1..=config.max_epochs {
        // objective and subgradient at the current iterate, one pass
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut hinge = 0.0;
        let mut grad_b = 0.0;
        for (sample, &target) in samples.iter().zip(targets) {
            let s = sample.iter().fold(b, |acc, &(i, x)| acc + w[i] * x);
            let loss = 1.0 - target * s;
            if loss > ROUNDING {
                hinge += loss;
                for &(i, x) in sample {
                    grad[i] -= target * x;
                }
                grad_b -= target;
            }
        }
        let current = hinge / n + lambda * penalty.value(&w);
        if !current.is_finite() {
            bail!(Numeric, "objective became non-finite at epoch {t}");
        }
        if best.is_infinite() || best - current > ROUNDING * best {
            best = current;
            best_w.copy_from_slice(&w);
            best_b = b;
        }
        trace.push(best);
        if best == 0.0 {
            converged = true;
            break;
        }
        if t > config.window {
            let before = trace[t - 1 - config.window];
            if before - best <= config.tol * before.abs() {
                converged = true;
                break;
            }
        }

        let eta = step_at(t as f64);
        match penalty {
            Penalty::L2 => {
                let shrink = 1.0 / (1.0 + 2.0 * eta * lambda);
                for (wi, gi) in w.iter_mut().zip(&grad) {
                    *wi = (*wi - eta * gi / n) * shrink;
                }
            }
            Penalty::L1 => {
                let tau = eta * lambda;
                for (wi, gi) in w.iter_mut().zip(&grad) {
                    *wi = soft_threshold(*wi - eta * gi / n, tau);
                }
            }
        }
        if problem.fit_bias() {
            b -= grad_b / n / math::sqrt(t as f64);
        }
    }

    let final_objective = problem.objective_raw(&best_w, best_b);
    let report = SolverReport { iterations: trace.len(), final_objective, objective_trace: trace, converged };
    Ok((TrustWeights::new(best_w, best_b, penalty.method()), report))
}

/// Agents whose weight magnitude exceeds `eps`.
pub fn support(weights: &TrustWeights, eps: f64) -> Vec<usize> {
    weights
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.abs() > eps)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::MethodTag;
    use crate::optim::objective;

    fn two_agent_problem(lambda: f64, penalty: Penalty) -> HingeProblem {
        // agent 0 always matches the target, agent 1 always opposes it
        let targets = vec![1.0, -1.0, 1.0, -1.0];
        let samples = targets.iter().map(|&t| vec![(0, t), (1, -t)]).collect();
        HingeProblem::new(2, samples, targets, lambda, penalty, true).unwrap()
    }

    #[test]
    fn l2_separates_truthful_from_contrary() {
        let p = two_agent_problem(0.1, Penalty::L2);
        let (w, report) = train_hinge(&p, &SolverConfig::default()).unwrap();
        assert!(w.weights[0] > 0.0 && w.weights[1] < 0.0, "{:?}", w.weights);
        for k in 0..p.num_samples() {
            assert!(p.score(k, &w) * p.targets()[k] > 0.0);
        }
        assert!((report.final_objective - objective(&p, &w).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn l2_without_lambda_is_rejected() {
        let p = two_agent_problem(0.0, Penalty::L2);
        assert!(matches!(train_hinge(&p, &SolverConfig::default()), Err(crate::Error::Argument(_))));
    }

    #[test]
    fn trace_never_increases() {
        let p = two_agent_problem(0.3, Penalty::L1);
        let (_, report) = train_hinge(&p, &SolverConfig::default()).unwrap();
        assert!(report.objective_trace.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(report.iterations, report.objective_trace.len());
    }

    #[test]
    fn support_examples() {
        let w = TrustWeights::new(vec![0.0, 0.3, 0.0], 0.0, MethodTag::ProfessionalSearch);
        assert_eq!(support(&w, DEFAULT_SUPPORT_EPS), [1]);
        assert!(support(&TrustWeights::zeros(4, MethodTag::ProfessionalSearch), DEFAULT_SUPPORT_EPS).is_empty());
    }

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(0.5, 0.2), 0.3);
        assert_eq!(soft_threshold(-0.5, 0.2), -0.3);
        assert_eq!(soft_threshold(0.1, 0.2), 0.0);
    }
}
