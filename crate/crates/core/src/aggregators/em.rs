//! Two-coin EM for binary crowds.
//!
//! Each agent `i` has a sensitivity `alpha_i = P(report + | truth +)` and a
//! specificity `beta_i = P(report - | truth -)`; truths are Bernoulli with a
//! global prevalence. Only the queries an agent actually answered enter its
//! likelihood.

use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::LabelId;
use crate::error::{bail, Result};
use crate::fusion::{FusionResult, MethodTag, TrustWeights};
use crate::math;
use crate::matrix::{encode_binary_id, ObservationMatrix, SignedMatrix};

const CLAMP_LO: f64 = 0.01;
const CLAMP_HI: f64 = 0.99;

#[inline]
fn clamp(p: f64) -> f64 {
    p.clamp(CLAMP_LO, CLAMP_HI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmConfig {
    pub max_iters: usize,
    /// Stop once the log-likelihood gains less than this per iteration.
    pub tol: f64,
}

impl Default for EmConfig {
    fn default() -> Self {
        EmConfig { max_iters: 500, tol: 1e-6 }
    }
}

/// Fitted two-coin parameters and per-query posteriors.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCoinModel {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub prevalence: f64,
    /// `P(truth positive | observations)` per query.
    pub posteriors: Vec<f64>,
    /// Log-likelihood after each iteration.
    pub log_likelihood: Vec<f64>,
    pub converged: bool,
    /// Whether the label-switching guard inverted the solution.
    pub flipped: bool,
}

impl TwoCoinModel {
    pub fn iterations(&self) -> usize {
        self.log_likelihood.len()
    }

    /// Linear part of the posterior log-odds: `(logit alpha_i + logit beta_i) / 2`
    /// per agent, with `logit(prevalence)` as bias. The participation-dependent
    /// offset of the exact log-odds is not representable as a fixed bias and is
    /// left out.
    pub fn trust_weights(&self) -> TrustWeights {
        let weights = self
            .alpha
            .iter()
            .zip(&self.beta)
            .map(|(&a, &b)| 0.5 * (math::logit(a) + math::logit(b)))
            .collect();
        TrustWeights::new(weights, math::logit(self.prevalence), MethodTag::ExpectationMaximization)
    }
}

struct Params {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    prevalence: f64,
}

/// Rows of the signed matrix, built once: `(query, ±1)` per agent.
fn agent_rows(signed: &SignedMatrix) -> Vec<Vec<(usize, f64)>> {
    let mut rows = vec![Vec::new(); signed.num_agents()];
    for q in 0..signed.num_queries() {
        for &(i, x) in signed.column(q) {
            rows[i].push((q, x));
        }
    }
    rows
}

fn m_step(rows: &[Vec<(usize, f64)>], post: &[f64], prev: Option<&Params>) -> Params {
    let m = rows.len();
    let mut alpha = vec![0.5; m];
    let mut beta = vec![0.5; m];
    for (i, row) in rows.iter().enumerate() {
        let (mut pos_mass, mut pos_hit, mut neg_mass, mut neg_hit) = (0.0, 0.0, 0.0, 0.0);
        for &(q, x) in row {
            let mu = post[q];
            pos_mass += mu;
            neg_mass += 1.0 - mu;
            if x > 0.0 {
                pos_hit += mu;
            } else {
                neg_hit += 1.0 - mu;
            }
        }
        // a zero mass leaves the parameter out of the likelihood; keep it put
        alpha[i] = if pos_mass > 0.0 { clamp(pos_hit / pos_mass) } else { prev.map_or(0.5, |p| p.alpha[i]) };
        beta[i] = if neg_mass > 0.0 { clamp(neg_hit / neg_mass) } else { prev.map_or(0.5, |p| p.beta[i]) };
    }
    let prevalence = if post.is_empty() { 0.5 } else { clamp(post.iter().sum::<f64>() / post.len() as f64) };
    Params { alpha, beta, prevalence }
}

/// Sum in value order, so that relabeling agents cannot change the result.
pub(crate) fn sorted_sum(terms: &mut [f64]) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum()
}

/// Posteriors and total log-likelihood under `params`.
fn e_step(signed: &SignedMatrix, params: &Params, post: &mut [f64]) -> f64 {
    let log_a: Vec<f64> = params.alpha.iter().map(|&a| math::ln(a)).collect();
    let log_1a: Vec<f64> = params.alpha.iter().map(|&a| math::ln(1.0 - a)).collect();
    let log_b: Vec<f64> = params.beta.iter().map(|&b| math::ln(b)).collect();
    let log_1b: Vec<f64> = params.beta.iter().map(|&b| math::ln(1.0 - b)).collect();
    let (log_p, log_1p) = (math::ln(params.prevalence), math::ln(1.0 - params.prevalence));
    let mut total = 0.0;
    let (mut pos_terms, mut neg_terms) = (Vec::new(), Vec::new());
    for (q, mu) in post.iter_mut().enumerate() {
        pos_terms.clear();
        neg_terms.clear();
        for &(i, x) in signed.column(q) {
            if x > 0.0 {
                pos_terms.push(log_a[i]);
                neg_terms.push(log_1b[i]);
            } else {
                pos_terms.push(log_1a[i]);
                neg_terms.push(log_b[i]);
            }
        }
        let pos = log_p + sorted_sum(&mut pos_terms);
        let neg = log_1p + sorted_sum(&mut neg_terms);
        let norm = math::log_add_exp(pos, neg);
        *mu = math::exp(pos - norm);
        total += norm;
    }
    total
}

/// Runs EM on a signed binary matrix.
pub fn fit_two_coin(signed: &SignedMatrix, config: &EmConfig) -> Result<TwoCoinModel> {
    if config.max_iters == 0 {
        bail!(Argument, "max_iters must be at least 1");
    }
    let rows = agent_rows(signed);
    // start from smoothed majority-vote fractions
    let mut post: Vec<f64> = (0..signed.num_queries())
        .map(|q| {
            let col = signed.column(q);
            if col.is_empty() {
                0.5
            } else {
                let pos = col.iter().filter(|&&(_, x)| x > 0.0).count();
                clamp(pos as f64 / col.len() as f64)
            }
        })
        .collect();

    let mut params = m_step(&rows, &post, None);
    let mut log_likelihood: Vec<f64> = Vec::new();
    let mut converged = false;
    for iter in 0..config.max_iters {
        if iter > 0 {
            params = m_step(&rows, &post, Some(&params));
        }
        let ll = e_step(signed, &params, &mut post);
        if !ll.is_finite() {
            bail!(Numeric, "log-likelihood became non-finite");
        }
        let gain = log_likelihood.last().map(|&prev| ll - prev);
        log_likelihood.push(ll);
        if matches!(gain, Some(g) if g < config.tol) {
            converged = true;
            break;
        }
    }

    let mut model = TwoCoinModel {
        alpha: params.alpha,
        beta: params.beta,
        prevalence: params.prevalence,
        posteriors: post,
        log_likelihood,
        converged,
        flipped: false,
    };
    let m = model.alpha.len().max(1) as f64;
    let mut sums: Vec<f64> = model.alpha.iter().zip(&model.beta).map(|(a, b)| a + b).collect();
    let mean_sum = sorted_sum(&mut sums) / m;
    if mean_sum < 1.0 {
        // Global relabeling leaves the likelihood unchanged:
        // alpha' = 1 - beta, beta' = 1 - alpha, p' = 1 - p, mu' = 1 - mu.
        let alpha: Vec<f64> = model.beta.iter().map(|b| 1.0 - b).collect();
        let beta: Vec<f64> = model.alpha.iter().map(|a| 1.0 - a).collect();
        model.alpha = alpha;
        model.beta = beta;
        model.prevalence = 1.0 - model.prevalence;
        model.posteriors.iter_mut().for_each(|p| *p = 1.0 - *p);
        model.flipped = true;
    }
    Ok(model)
}

/// Two-coin EM on a matrix, with `positive` as the positive class.
///
/// For binary alphabets `positive` may be omitted (the larger label is used).
/// Prediction is `positive` iff the posterior exceeds 0.5. On larger
/// alphabets the negative side is split among the non-positive labels by
/// their vote share, so the argmax falls on the most reported of them.
pub fn em_infer(matrix: &ObservationMatrix, positive: Option<LabelId>, config: &EmConfig) -> Result<(TwoCoinModel, FusionResult)> {
    let alphabet = matrix.alphabet();
    let positive = match positive {
        Some(p) if alphabet.contains(p) => p,
        Some(p) => bail!(Alphabet, "positive label index {} outside alphabet", p.index()),
        None if alphabet.is_binary() => alphabet.binary_pair()?.0,
        None => bail!(Argument, "EM on a {}-label alphabet needs a positive label", alphabet.len()),
    };
    let signed = encode_binary_id(matrix, positive);
    let model = fit_two_coin(&signed, config)?;
    let k = alphabet.len();
    let result = FusionResult::from_scores(model.posteriors.iter().enumerate().map(|(q, &mu)| {
        let mut v = vec![0.0; k];
        v[positive.index()] = mu - 0.5;
        let mut counts = vec![0usize; k];
        for o in matrix.column(q) {
            if o.label != positive {
                counts[o.label.index()] += 1;
            }
        }
        let others: usize = counts.iter().sum();
        for c in alphabet.ids().filter(|&c| c != positive) {
            v[c.index()] = if others == 0 {
                if k == 2 {
                    0.5 - mu
                } else {
                    0.0
                }
            } else {
                (0.5 - mu) * counts[c.index()] as f64 / others as f64
            };
        }
        (q, v)
    }));
    Ok((model, result))
}
