//! Preset crowds shaped like the two benchmark regimes: a sparse binary
//! relevance-judgment crowd and a dense four-choice exam.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::scenario::{generate, stream, CrowdScenario};
use super::PARAMETER_STREAM;
use crate::alphabet::LabelAlphabet;
use crate::answers::AnswerKey;
use crate::matrix::ObservationMatrix;

/// Triangular draw on `[lo, hi]` (mean of two uniforms).
fn spread(rng: &mut impl Rng, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|_| lo + (hi - lo) * 0.5 * (rng.gen::<f64>() + rng.gen::<f64>())).collect()
}

pub const TREC_AGENTS: usize = 689;
pub const TREC_QUERIES: usize = 394;
pub const TREC_PARTICIPATION: f64 = 0.066;
const TREC_RELIABILITY: (f64, f64) = (0.12, 1.0);

pub const EXAM_AGENTS: usize = 183;
pub const EXAM_QUERIES: usize = 40;
pub const EXAM_PARTICIPATION: f64 = 0.98;
const EXAM_RELIABILITY: (f64, f64) = (0.25, 0.69);

/// 689 agents, 394 binary queries, each agent answering about 6.6% of them.
pub fn trec_like_scenario(seed: u64) -> CrowdScenario {
    let mut rng = stream(seed, PARAMETER_STREAM);
    CrowdScenario {
        num_agents: TREC_AGENTS,
        num_queries: TREC_QUERIES,
        alphabet: LabelAlphabet::new(["irrelevant", "relevant"]).expect("static alphabet"),
        reliability: spread(&mut rng, TREC_RELIABILITY.0, TREC_RELIABILITY.1, TREC_AGENTS),
        participation: vec![TREC_PARTICIPATION; TREC_AGENTS],
        truth: None,
        seed,
    }
}

/// 183 agents, 40 four-choice questions, nearly everyone answering; no agent
/// is more than 70% reliable.
pub fn exam_like_scenario(seed: u64) -> CrowdScenario {
    let mut rng = stream(seed, PARAMETER_STREAM);
    CrowdScenario {
        num_agents: EXAM_AGENTS,
        num_queries: EXAM_QUERIES,
        alphabet: LabelAlphabet::new(["A", "B", "C", "D"]).expect("static alphabet"),
        reliability: spread(&mut rng, EXAM_RELIABILITY.0, EXAM_RELIABILITY.1, EXAM_AGENTS),
        participation: vec![EXAM_PARTICIPATION; EXAM_AGENTS],
        truth: None,
        seed,
    }
}

pub fn trec_like(seed: u64) -> (ObservationMatrix, AnswerKey) {
    generate(&trec_like_scenario(seed)).expect("preset scenario is valid")
}

pub fn exam_like(seed: u64) -> (ObservationMatrix, AnswerKey) {
    generate(&exam_like_scenario(seed)).expect("preset scenario is valid")
}
