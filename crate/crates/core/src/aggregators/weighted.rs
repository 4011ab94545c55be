use alloc::vec;
use alloc::vec::Vec;

use super::check_train;
use crate::answers::AnswerKey;
use crate::error::Result;
use crate::fusion::{MethodTag, TrustWeights};
use crate::matrix::ObservationMatrix;

/// Per-agent accuracy on the training queries.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentAccuracy {
    /// Fraction of answered training queries the agent got right; 0 if none answered.
    pub q: Vec<f64>,
    /// Number of training queries each agent answered.
    pub answered: Vec<usize>,
}

pub fn agent_accuracy(matrix: &ObservationMatrix, key: &AnswerKey, train: &[usize]) -> Result<AgentAccuracy> {
    check_train(key, train)?;
    let m = matrix.num_agents();
    let mut correct = vec![0usize; m];
    let mut answered = vec![0usize; m];
    for &j in train {
        let truth = key.require(j)?;
        for o in matrix.column(j) {
            answered[o.agent] += 1;
            correct[o.agent] += usize::from(o.label == truth);
        }
    }
    let q = correct
        .iter()
        .zip(&answered)
        .map(|(&c, &a)| if a == 0 { 0.0 } else { c as f64 / a as f64 })
        .collect();
    Ok(AgentAccuracy { q, answered })
}

/// Weights proportional to training accuracy, `w_i = q_i / Σ_k q_k`.
///
/// Falls back to uniform weights when no agent got anything right.
pub fn weighted_averaging(matrix: &ObservationMatrix, key: &AnswerKey, train: &[usize]) -> Result<TrustWeights> {
    let acc = agent_accuracy(matrix, key, train)?;
    let total: f64 = acc.q.iter().sum();
    if total <= 0.0 {
        return Ok(TrustWeights::uniform(matrix.num_agents(), MethodTag::WeightedAveraging));
    }
    let weights = acc.q.iter().map(|q| q / total).collect();
    Ok(TrustWeights::new(weights, 0.0, MethodTag::WeightedAveraging))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{majority_votes, weighted_vote, LabelAlphabet, LabelId};

    fn alphabet() -> LabelAlphabet {
        LabelAlphabet::new(["no", "yes"]).unwrap()
    }

    #[test]
    fn normalizes_accuracy() {
        // agent 0 right on both, agents 1 and 2 right on one of two
        let m = ObservationMatrix::from_named(
            3,
            2,
            alphabet(),
            [(0, 0, "yes"), (0, 1, "no"), (1, 0, "yes"), (1, 1, "yes"), (2, 0, "no"), (2, 1, "no")],
        )
        .unwrap();
        let key = AnswerKey::new(2, m.alphabet(), [(0, LabelId::new(1)), (1, LabelId::new(0))]).unwrap();
        let acc = agent_accuracy(&m, &key, &[0, 1]).unwrap();
        assert_eq!(acc.q, [1.0, 0.5, 0.5]);
        assert_eq!(acc.answered, [2, 2, 2]);
        let w = weighted_averaging(&m, &key, &[0, 1]).unwrap();
        assert_eq!(w.weights, [0.5, 0.25, 0.25]);
        assert_eq!(w.bias, 0.0);
    }

    #[test]
    fn silent_agent_gets_zero() {
        let m = ObservationMatrix::from_named(2, 1, alphabet(), [(0, 0, "yes")]).unwrap();
        let key = AnswerKey::new(1, m.alphabet(), [(0, LabelId::new(1))]).unwrap();
        let w = weighted_averaging(&m, &key, &[0]).unwrap();
        assert_eq!(w.weights, [1.0, 0.0]);
    }

    #[test]
    fn all_wrong_falls_back_to_uniform() {
        let m = ObservationMatrix::from_named(2, 1, alphabet(), [(0, 0, "no"), (1, 0, "no")]).unwrap();
        let key = AnswerKey::new(1, m.alphabet(), [(0, LabelId::new(1))]).unwrap();
        assert_eq!(weighted_averaging(&m, &key, &[0]).unwrap().weights, [0.5, 0.5]);
    }

    #[test]
    fn equal_accuracy_reduces_to_majority() {
        // every agent right on query 0 and wrong on query 1
        let m = ObservationMatrix::from_named(
            3,
            4,
            alphabet(),
            [
                (0, 0, "yes"),
                (1, 0, "yes"),
                (2, 0, "yes"),
                (0, 1, "yes"),
                (1, 1, "yes"),
                (2, 1, "yes"),
                (0, 2, "yes"),
                (1, 2, "no"),
                (2, 2, "no"),
                (0, 3, "no"),
            ],
        )
        .unwrap();
        let key = AnswerKey::new(4, m.alphabet(), [(0, LabelId::new(1)), (1, LabelId::new(0))]).unwrap();
        let w = weighted_averaging(&m, &key, &[0, 1]).unwrap();
        assert_eq!(w.weights, [1.0 / 3.0; 3]);
        let (_, mv) = majority_votes(&m).unwrap();
        let wa = weighted_vote(&m, &w).unwrap();
        for q in 0..4 {
            assert_eq!(wa.prediction(q), mv.prediction(q));
        }
    }

    #[test]
    fn empty_train_rejected() {
        let m = ObservationMatrix::from_named(1, 1, alphabet(), [(0, 0, "no")]).unwrap();
        let key = AnswerKey::new(1, m.alphabet(), [(0, LabelId::new(1))]).unwrap();
        assert!(matches!(weighted_averaging(&m, &key, &[]), Err(crate::Error::Argument(_))));
    }
}
