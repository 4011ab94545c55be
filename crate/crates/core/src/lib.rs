//! Trust-weighted fusion of sparse, noisy categorical observations.
//!
//! Every agent `i` receives a weight of trust `w_i`, and the fused answer for a
//! query is the combination of each agent's observation multiplied by its
//! weight. The crate implements six ways of choosing those weights:
//!
//! * unsupervised: [`majority_votes`], [`em_infer`] (two-coin EM);
//! * supervised: [`weighted_averaging`], [`exponential_weighted`],
//!   and regularized hinge minimization ([`train_hinge`]) with an L2 penalty
//!   (support vector machine) or an L1 penalty (professional search).
//!
//! Model selection ([`loocv_select`]) and the one-vs-all multiclass reduction
//! live in [`modelsel`]; [`simulate`] generates synthetic crowds with known
//! ground truth and hosts the brute-force oracle used to check the solver.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod aggregators;
mod alphabet;
mod answers;
mod error;
mod fusion;
mod matrix;
mod math;
pub mod methods;
pub mod modelsel;
pub mod optim;
pub mod simulate;

pub use aggregators::{
    agent_accuracy, default_eta, em_infer, exponential_weighted, fit_two_coin, majority_votes,
    weighted_averaging, AgentAccuracy, EmConfig, TwoCoinModel,
};
pub use alphabet::{LabelAlphabet, LabelId};
pub use answers::{split_queries, AnswerKey, Split};
pub use error::{Error, Result};
pub use fusion::{accuracy, decide_binary, fuse, weighted_vote, FusionResult, MethodTag, TrustWeights};
pub use matrix::{encode_binary, Observation, ObservationMatrix, SignedMatrix};
pub use modelsel::{loocv_select, one_vs_all_predict, one_vs_all_train, CvReport, LambdaGrid, OneVsAllModel};
pub use optim::{objective, support, train_hinge, HingeProblem, Penalty, SolverConfig, SolverReport};
