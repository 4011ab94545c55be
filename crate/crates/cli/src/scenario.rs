//! Scenario files: TOML key-value descriptions of a synthetic crowd.
//!
//! ```toml
//! num_agents = 3
//! num_queries = 50
//! labels = ["neg", "pos"]
//! reliability = [0.9, 0.6, 0.6]   # or one number for every agent
//! participation = 1.0              # or one number per agent
//! truth = ["pos", "neg", ...]      # optional, drawn uniformly otherwise
//! ```
//!
//! The seed is not part of the file; it comes from the command line.

use serde::Deserialize;

use crowdtrust_core::simulate::CrowdScenario;
use crowdtrust_core::LabelAlphabet;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum PerAgent {
    Same(f64),
    Each(Vec<f64>),
}

impl PerAgent {
    fn expand(self, m: usize, what: &str) -> Result<Vec<f64>> {
        match self {
            PerAgent::Same(v) => Ok(vec![v; m]),
            PerAgent::Each(v) if v.len() == m => Ok(v),
            PerAgent::Each(v) => Err(CliError::Config(format!("{what} lists {} values for {m} agents", v.len()))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    num_agents: usize,
    num_queries: usize,
    labels: Vec<String>,
    reliability: PerAgent,
    participation: PerAgent,
    truth: Option<Vec<String>>,
}

/// Parses and validates a scenario file.
pub fn parse_scenario(text: &str, seed: u64) -> Result<CrowdScenario> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    let m = file.num_agents;
    if m == 0 || file.num_queries == 0 {
        return Err(CliError::Config("num_agents and num_queries must be positive".into()));
    }
    let alphabet = LabelAlphabet::new(file.labels.iter().map(String::as_str)).map_err(|e| CliError::Config(e.to_string()))?;
    let truth = file
        .truth
        .map(|t| t.iter().map(|l| alphabet.lookup(l)).collect::<std::result::Result<Vec<_>, _>>())
        .transpose()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let scenario = CrowdScenario {
        num_agents: m,
        num_queries: file.num_queries,
        alphabet,
        reliability: file.reliability.expand(m, "reliability")?,
        participation: file.participation.expand(m, "participation")?,
        truth,
        seed,
    };
    scenario.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(scenario)
}
