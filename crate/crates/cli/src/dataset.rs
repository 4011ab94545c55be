//! Delimited observation and answer-key files.
//!
//! Observations: header `query_id,agent_id,label`, one record per line.
//! Answer key: header `query_id,label`. Identifiers are free-form strings and
//! are given dense indices in order of first appearance in the observations
//! file. Labels found only in the key still join the alphabet.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use crowdtrust_core::{AnswerKey, LabelAlphabet, ObservationMatrix};

use crate::error::{CliError, Result};

pub const OBSERVATIONS_HEADER: [&str; 3] = ["query_id", "agent_id", "label"];
pub const KEY_HEADER: [&str; 2] = ["query_id", "label"];

/// Observations plus optional answer key, with the id tables of the loader.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub queries: Vec<String>,
    pub agents: Vec<String>,
    pub matrix: ObservationMatrix,
    pub key: Option<AnswerKey>,
}

struct Record {
    line: Option<u64>,
    fields: Vec<String>,
}

fn read_records(text: &str, source: &Path, header: &[&str]) -> Result<Vec<Record>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let found = reader.headers().map_err(|e| csv_error(source, e))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(CliError::load(
            source,
            Some(1),
            format!("expected header `{}`, found `{}`", header.join(","), found.iter().collect::<Vec<_>>().join(",")),
        ));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = record.position().map(|p| p.line());
        if let Some(k) = record.iter().position(str::is_empty) {
            return Err(CliError::load(source, line, format!("empty `{}` field", header[k])));
        }
        out.push(Record { line, fields: record.iter().map(str::to_owned).collect() });
    }
    Ok(out)
}

fn csv_error(source: &Path, e: csv::Error) -> CliError {
    let line = e.position().map(|p| p.line());
    CliError::load(source, line, e.to_string())
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::load(path, None, e.to_string()))
}

impl Dataset {
    pub fn load(observations: &Path, key: Option<&Path>) -> Result<Self> {
        let obs_text = read_file(observations)?;
        let key_text = key.map(read_file).transpose()?;
        Self::parse(&obs_text, observations, key_text.as_deref().zip(key))
    }

    /// Parses file contents; the paths are only used in error messages.
    pub fn parse(observations: &str, obs_source: &Path, key: Option<(&str, &Path)>) -> Result<Self> {
        let records = read_records(observations, obs_source, &OBSERVATIONS_HEADER)?;
        let mut queries: Vec<String> = Vec::new();
        let mut agents: Vec<String> = Vec::new();
        let mut query_index: HashMap<String, usize> = HashMap::new();
        let mut agent_index: HashMap<String, usize> = HashMap::new();
        let mut seen: HashMap<(usize, usize), Option<u64>> = HashMap::new();
        let mut labels: BTreeSet<String> = BTreeSet::new();
        let mut triples = Vec::with_capacity(records.len());
        for r in &records {
            let [q, a, l] = [&r.fields[0], &r.fields[1], &r.fields[2]];
            let qi = *query_index.entry(q.clone()).or_insert_with(|| {
                queries.push(q.clone());
                queries.len() - 1
            });
            let ai = *agent_index.entry(a.clone()).or_insert_with(|| {
                agents.push(a.clone());
                agents.len() - 1
            });
            if let Some(first) = seen.insert((qi, ai), r.line) {
                let at = first.map(|l| format!(" (first on line {l})")).unwrap_or_default();
                return Err(CliError::load(obs_source, r.line, format!("duplicate observation for query `{q}`, agent `{a}`{at}")));
            }
            labels.insert(l.clone());
            triples.push((ai, qi, l.as_str()));
        }

        let mut key_entries = Vec::new();
        if let Some((text, source)) = key {
            let mut answered: HashMap<usize, Option<u64>> = HashMap::new();
            for r in read_records(text, source, &KEY_HEADER)? {
                let (q, l) = (&r.fields[0], &r.fields[1]);
                let Some(&qi) = query_index.get(q) else {
                    return Err(CliError::load(source, r.line, format!("query `{q}` does not appear in the observations")));
                };
                if answered.insert(qi, r.line).is_some() {
                    return Err(CliError::load(source, r.line, format!("duplicate answer for query `{q}`")));
                }
                labels.insert(l.clone());
                key_entries.push((qi, l.clone()));
            }
        }

        let alphabet = LabelAlphabet::new(labels.iter().map(String::as_str))
            .map_err(|e| CliError::load(obs_source, None, format!("label set: {e}")))?;
        let matrix = ObservationMatrix::from_named(agents.len(), queries.len(), alphabet.clone(), triples)
            .map_err(|e| CliError::load(obs_source, None, e.to_string()))?;
        let key = match key {
            Some((_, source)) => {
                let resolved = key_entries.iter().map(|(q, l)| (*q, alphabet.lookup(l).expect("label was collected")));
                Some(AnswerKey::new(queries.len(), &alphabet, resolved).map_err(|e| CliError::load(source, None, e.to_string()))?)
            }
            None => None,
        };
        Ok(Dataset { queries, agents, matrix, key })
    }

    /// Wraps generated data with ids `q…`/`a…` zero-padded to a common width.
    pub fn from_generated(matrix: ObservationMatrix, key: AnswerKey) -> Self {
        let ids = |prefix: char, n: usize| {
            let width = n.saturating_sub(1).to_string().len();
            (0..n).map(|i| format!("{prefix}{i:0width$}")).collect::<Vec<_>>()
        };
        Dataset { queries: ids('q', matrix.num_queries()), agents: ids('a', matrix.num_agents()), matrix, key: Some(key) }
    }

    pub fn query_index(&self, id: &str) -> Option<usize> {
        self.queries.iter().position(|q| q == id)
    }

    /// Observations as CSV, sorted by query id then agent id.
    pub fn observations_csv(&self) -> Result<String> {
        let alphabet = self.matrix.alphabet();
        let mut rows: Vec<(&str, &str, &str)> = self
            .matrix
            .entries()
            .map(|(a, q, l)| (self.queries[q].as_str(), self.agents[a].as_str(), alphabet.name(l)))
            .collect();
        rows.sort_unstable();
        write_csv(&OBSERVATIONS_HEADER, rows.into_iter().map(|(q, a, l)| vec![q, a, l]))
    }

    /// Answer key as CSV sorted by query id; `None` without a key.
    pub fn key_csv(&self) -> Result<Option<String>> {
        let Some(key) = &self.key else { return Ok(None) };
        let alphabet = self.matrix.alphabet();
        let mut rows: Vec<(&str, &str)> = key.iter().map(|(q, l)| (self.queries[q].as_str(), alphabet.name(l))).collect();
        rows.sort_unstable();
        write_csv(&KEY_HEADER, rows.into_iter().map(|(q, l)| vec![q, l])).map(Some)
    }

    pub fn save(&self, observations: &Path, key: Option<&Path>) -> Result<()> {
        fs::write(observations, self.observations_csv()?)?;
        if let (Some(path), Some(text)) = (key, self.key_csv()?) {
            fs::write(path, text)?;
        }
        Ok(())
    }
}

fn write_csv<'a>(header: &[&str], rows: impl Iterator<Item = Vec<&'a str>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}
