use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{LabelAlphabet, LabelId};
use crate::error::{bail, Result};

/// One agent's answer to one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Observation {
    pub agent: usize,
    pub label: LabelId,
}

/// Sparse agents × queries matrix of categorical answers.
///
/// Absent entries mean the agent did not observe the query. Entries are kept
/// both per query (columns) and per agent (rows), each sorted by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationMatrix {
    num_agents: usize,
    num_queries: usize,
    alphabet: LabelAlphabet,
    columns: Vec<Vec<Observation>>,
    rows: Vec<Vec<(usize, LabelId)>>,
}

impl ObservationMatrix {
    /// Builds a matrix from `(agent, query, label)` triples.
    pub fn new<I>(num_agents: usize, num_queries: usize, alphabet: LabelAlphabet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, LabelId)>,
    {
        let mut columns: Vec<Vec<Observation>> = vec![Vec::new(); num_queries];
        let mut rows: Vec<Vec<(usize, LabelId)>> = vec![Vec::new(); num_agents];
        for (agent, query, label) in entries {
            if agent >= num_agents {
                bail!(Shape, "agent index {agent} out of range for {num_agents} agents");
            }
            if query >= num_queries {
                bail!(Shape, "query index {query} out of range for {num_queries} queries");
            }
            if !alphabet.contains(label) {
                bail!(Alphabet, "label index {} outside alphabet of size {}", label.index(), alphabet.len());
            }
            columns[query].push(Observation { agent, label });
            rows[agent].push((query, label));
        }
        for (query, col) in columns.iter_mut().enumerate() {
            col.sort_by_key(|o| o.agent);
            if let Some(w) = col.windows(2).find(|w| w[0].agent == w[1].agent) {
                bail!(Argument, "duplicate observation for agent {} on query {query}", w[0].agent);
            }
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|&(q, _)| q);
        }
        Ok(ObservationMatrix { num_agents, num_queries, alphabet, columns, rows })
    }

    /// Same as [`ObservationMatrix::new`] but with labels given by name.
    pub fn from_named<'a, I>(num_agents: usize, num_queries: usize, alphabet: LabelAlphabet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, &'a str)>,
    {
        let resolved = entries
            .into_iter()
            .map(|(a, q, l)| alphabet.lookup(l).map(|id| (a, q, id)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(num_agents, num_queries, alphabet, resolved)
    }

    pub fn num_agents(&self) -> usize {
        self.num_agents
    }

    pub fn num_queries(&self) -> usize {
        self.num_queries
    }

    pub fn alphabet(&self) -> &LabelAlphabet {
        &self.alphabet
    }

    pub fn num_entries(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// Answers to query `query`, sorted by agent.
    pub fn column(&self, query: usize) -> &[Observation] {
        &self.columns[query]
    }

    /// Answers given by `agent`, sorted by query.
    pub fn row(&self, agent: usize) -> &[(usize, LabelId)] {
        &self.rows[agent]
    }

    pub fn get(&self, agent: usize, query: usize) -> Option<LabelId> {
        let col = self.columns.get(query)?;
        col.binary_search_by_key(&agent, |o| o.agent).ok().map(|k| col[k].label)
    }

    /// All entries as `(agent, query, label)`, query-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, LabelId)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(q, col)| col.iter().map(move |o| (o.agent, q, o.label)))
    }
}

/// Binary view of an [`ObservationMatrix`]: `+1` where the agent reported the
/// positive label, `-1` for any other label, absent where it did not answer.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMatrix {
    num_agents: usize,
    columns: Vec<Vec<(usize, f64)>>,
}

impl SignedMatrix {
    pub fn num_agents(&self) -> usize {
        self.num_agents
    }

    pub fn num_queries(&self) -> usize {
        self.columns.len()
    }

    /// Nonzero entries of query `query` as `(agent, ±1)`, sorted by agent.
    pub fn column(&self, query: usize) -> &[(usize, f64)] {
        &self.columns[query]
    }

    /// Dense value at `(agent, query)`; 0 when missing.
    pub fn value(&self, agent: usize, query: usize) -> f64 {
        let col = &self.columns[query];
        match col.binary_search_by_key(&agent, |&(a, _)| a) {
            Ok(k) => col[k].1,
            Err(_) => 0.0,
        }
    }
}

/// Signed encoding relative to `positive`.
pub fn encode_binary(matrix: &ObservationMatrix, positive: &str) -> Result<SignedMatrix> {
    let positive = matrix.alphabet().lookup(positive)?;
    Ok(encode_binary_id(matrix, positive))
}

pub(crate) fn encode_binary_id(matrix: &ObservationMatrix, positive: LabelId) -> SignedMatrix {
    let columns = (0..matrix.num_queries())
        .map(|q| {
            matrix
                .column(q)
                .iter()
                .map(|o| (o.agent, if o.label == positive { 1.0 } else { -1.0 }))
                .collect()
        })
        .collect();
    SignedMatrix { num_agents: matrix.num_agents(), columns }
}
