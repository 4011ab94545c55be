use crate::error::{bail, Result};
use crate::fusion::{weighted_vote, FusionResult, MethodTag, TrustWeights};
use crate::matrix::ObservationMatrix;

/// Uniform trust `1/m`; each query goes to its most reported label.
///
/// Unanswered queries get an all-zero score vector and thus the smallest label.
pub fn majority_votes(matrix: &ObservationMatrix) -> Result<(TrustWeights, FusionResult)> {
    if matrix.num_agents() == 0 {
        bail!(Argument, "majority votes needs at least one agent");
    }
    let weights = TrustWeights::uniform(matrix.num_agents(), MethodTag::MajorityVotes);
    let result = weighted_vote(matrix, &weights)?;
    Ok((weights, result))
}
