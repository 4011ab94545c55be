//! Regularized hinge-loss training of trust weights.
//!
//! The objective is
//!
//! ```text
//! (1/T) Σ_j max(0, 1 - t_j (b + Σ_i w_i x_ij)) + λ R(w)
//! ```
//!
//! with `R(w) = Σ w_i²` (support vector machine) or `R(w) = Σ |w_i|`
//! (professional search, which zeroes most weights). The intercept `b` is
//! never penalized.

mod problem;
mod solver;

pub use problem::{objective, HingeProblem, Penalty};
pub use solver::{support, train_hinge, SolverConfig, SolverReport, StepSchedule, DEFAULT_SUPPORT_EPS};
