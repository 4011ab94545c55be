//! Closed-form, sequential and EM weight assignment.

mod em;
mod hedge;
mod majority;
mod weighted;

pub use em::{em_infer, fit_two_coin, EmConfig, TwoCoinModel};
pub use hedge::{default_eta, exponential_weighted};
pub use majority::majority_votes;
pub use weighted::{agent_accuracy, weighted_averaging, AgentAccuracy};

use crate::answers::AnswerKey;
use crate::error::{bail, Result};

/// Checks that every training query is answered in the key.
pub(crate) fn check_train(key: &AnswerKey, train: &[usize]) -> Result<()> {
    if train.is_empty() {
        bail!(Argument, "training set is empty");
    }
    for &q in train {
        key.require(q)?;
    }
    Ok(())
}
