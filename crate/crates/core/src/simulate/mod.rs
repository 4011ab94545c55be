//! Synthetic crowds with known ground truth, plus a grid-search oracle for
//! the hinge solver.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`. Stream 0
//! draws the true labels, stream `1 + i` draws everything agent `i` reports,
//! and [`PARAMETER_STREAM`] draws preset reliabilities. Adding an agent never
//! changes what the other agents report.

mod oracle;
mod presets;
mod scenario;

pub use oracle::brute_force_weights;
pub use presets::{exam_like, exam_like_scenario, trec_like, trec_like_scenario};
pub use scenario::{generate, CrowdScenario, TwoCoinScenario};

/// ChaCha stream used for preset parameters.
pub const PARAMETER_STREAM: u64 = u64::MAX;
