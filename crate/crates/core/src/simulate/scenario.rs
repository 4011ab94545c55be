use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{LabelAlphabet, LabelId};
use crate::answers::AnswerKey;
use crate::error::{bail, Result};
use crate::matrix::ObservationMatrix;

pub(crate) fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generative description of a crowd with symmetric per-agent noise.
#[derive(Debug, Clone, PartialEq)]
pub struct CrowdScenario {
    pub num_agents: usize,
    pub num_queries: usize,
    pub alphabet: LabelAlphabet,
    /// Probability that agent `i` reports the true label.
    pub reliability: Vec<f64>,
    /// Probability that agent `i` answers a given query.
    pub participation: Vec<f64>,
    /// True labels; drawn uniformly when `None`.
    pub truth: Option<Vec<LabelId>>,
    pub seed: u64,
}

impl CrowdScenario {
    pub fn validate(&self) -> Result<()> {
        if self.reliability.len() != self.num_agents || self.participation.len() != self.num_agents {
            bail!(
                Argument,
                "{} agents but {} reliabilities and {} participation rates",
                self.num_agents,
                self.reliability.len(),
                self.participation.len()
            );
        }
        if let Some(r) = self.reliability.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            bail!(Argument, "reliability {r} outside [0, 1]");
        }
        if let Some(p) = self.participation.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
            bail!(Argument, "participation {p} outside (0, 1]");
        }
        if let Some(truth) = &self.truth {
            if truth.len() != self.num_queries {
                bail!(Argument, "{} true labels for {} queries", truth.len(), self.num_queries);
            }
            if truth.iter().any(|&l| !self.alphabet.contains(l)) {
                bail!(Alphabet, "true label outside alphabet");
            }
        }
        Ok(())
    }
}

/// Draws one observation matrix and the full answer key.
///
/// Each agent answers each query independently with its participation
/// probability; an answer is correct with its reliability and otherwise
/// uniform over the wrong labels.
pub fn generate(scenario: &CrowdScenario) -> Result<(ObservationMatrix, AnswerKey)> {
    scenario.validate()?;
    let k = scenario.alphabet.len();
    let truth: Vec<LabelId> = match &scenario.truth {
        Some(t) => t.clone(),
        None => {
            let mut rng = stream(scenario.seed, 0);
            (0..scenario.num_queries).map(|_| LabelId::new(rng.gen_range(0..k))).collect()
        }
    };
    let mut entries = Vec::new();
    for agent in 0..scenario.num_agents {
        let mut rng = stream(scenario.seed, 1 + agent as u64);
        let (rel, part) = (scenario.reliability[agent], scenario.participation[agent]);
        for (query, &t) in truth.iter().enumerate() {
            if rng.gen::<f64>() >= part {
                continue;
            }
            let label = if rng.gen::<f64>() < rel {
                t
            } else {
                let wrong = rng.gen_range(0..k - 1);
                LabelId::new(if wrong >= t.index() { wrong + 1 } else { wrong })
            };
            entries.push((agent, query, label));
        }
    }
    let matrix = ObservationMatrix::new(scenario.num_agents, scenario.num_queries, scenario.alphabet.clone(), entries)?;
    let key = AnswerKey::new(scenario.num_queries, &scenario.alphabet, truth.into_iter().enumerate())?;
    Ok((matrix, key))
}

/// Binary crowd with per-agent sensitivity and specificity.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoCoinScenario {
    /// `P(report positive | truth positive)` per agent.
    pub alpha: Vec<f64>,
    /// `P(report negative | truth negative)` per agent.
    pub beta: Vec<f64>,
    pub prevalence: f64,
    pub participation: f64,
    pub num_queries: usize,
    pub seed: u64,
}

impl TwoCoinScenario {
    /// Alphabet `["neg", "pos"]`; "pos" is the positive class.
    pub fn generate(&self) -> Result<(ObservationMatrix, AnswerKey)> {
        if self.alpha.len() != self.beta.len() {
            bail!(Argument, "{} sensitivities but {} specificities", self.alpha.len(), self.beta.len());
        }
        let unit = |p: &f64| (0.0..=1.0).contains(p);
        if !self.alpha.iter().all(unit) || !self.beta.iter().all(unit) || !unit(&self.prevalence) {
            bail!(Argument, "probabilities must lie in [0, 1]");
        }
        if !(self.participation > 0.0 && self.participation <= 1.0) {
            bail!(Argument, "participation {} outside (0, 1]", self.participation);
        }
        let alphabet = LabelAlphabet::new(["neg", "pos"])?;
        let (pos, neg) = (LabelId::new(1), LabelId::new(0));
        let mut rng = stream(self.seed, 0);
        let truth: Vec<bool> = (0..self.num_queries).map(|_| rng.gen::<f64>() < self.prevalence).collect();
        let mut entries = Vec::new();
        for agent in 0..self.alpha.len() {
            let mut rng = stream(self.seed, 1 + agent as u64);
            for (query, &positive) in truth.iter().enumerate() {
                if rng.gen::<f64>() >= self.participation {
                    continue;
                }
                let u = rng.gen::<f64>();
                let says_pos = if positive { u < self.alpha[agent] } else { u >= self.beta[agent] };
                entries.push((agent, query, if says_pos { pos } else { neg }));
            }
        }
        let matrix = ObservationMatrix::new(self.alpha.len(), self.num_queries, alphabet.clone(), entries)?;
        let key = AnswerKey::new(
            self.num_queries,
            &alphabet,
            truth.iter().enumerate().map(|(q, &p)| (q, if p { pos } else { neg })),
        )?;
        Ok((matrix, key))
    }
}
