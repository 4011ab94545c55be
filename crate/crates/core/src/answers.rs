use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{LabelAlphabet, LabelId};
use crate::error::{bail, Result};

/// Ground-truth labels for the queries whose answers are known.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnswerKey {
    labels: BTreeMap<usize, LabelId>,
}

impl AnswerKey {
    pub fn new<I>(num_queries: usize, alphabet: &LabelAlphabet, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, LabelId)>,
    {
        let mut labels = BTreeMap::new();
        for (query, label) in entries {
            if query >= num_queries {
                bail!(Shape, "answer for query {query} but only {num_queries} queries exist");
            }
            if !alphabet.contains(label) {
                bail!(Alphabet, "answer label index {} outside alphabet", label.index());
            }
            if labels.insert(query, label).is_some() {
                bail!(Argument, "query {query} answered twice in key");
            }
        }
        Ok(AnswerKey { labels })
    }

    pub fn get(&self, query: usize) -> Option<LabelId> {
        self.labels.get(&query).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Covered queries in ascending order.
    pub fn coverage(&self) -> Vec<usize> {
        self.labels.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, LabelId)> + '_ {
        self.labels.iter().map(|(&q, &l)| (q, l))
    }

    pub(crate) fn require(&self, query: usize) -> Result<LabelId> {
        match self.get(query) {
            Some(l) => Ok(l),
            None => bail!(Argument, "query {query} has no known answer"),
        }
    }
}

/// Disjoint train/test query lists, both ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Split {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl Split {
    pub fn new(mut train: Vec<usize>, mut test: Vec<usize>) -> Result<Self> {
        train.sort_unstable();
        test.sort_unstable();
        if train.windows(2).any(|w| w[0] == w[1]) || test.windows(2).any(|w| w[0] == w[1]) {
            bail!(Argument, "split lists must not repeat queries");
        }
        if let Some(q) = train.iter().find(|q| test.binary_search(q).is_ok()) {
            bail!(Argument, "query {q} is in both train and test");
        }
        Ok(Split { train, test })
    }

    /// Uses an explicit training list; every other covered query is test.
    pub fn with_train(key: &AnswerKey, train: Vec<usize>) -> Result<Self> {
        if let Some(q) = train.iter().find(|&&q| key.get(q).is_none()) {
            bail!(Argument, "training query {q} has no known answer");
        }
        let test = key.coverage().into_iter().filter(|q| !train.contains(q)).collect();
        Split::new(train, test)
    }
}

/// Seeded uniform choice of `train_count` training queries from the key's
/// coverage; the rest of the coverage is the test set.
pub fn split_queries(key: &AnswerKey, train_count: usize, seed: u64) -> Result<Split> {
    let mut coverage = key.coverage();
    if train_count > coverage.len() {
        bail!(Argument, "train_count {train_count} exceeds the {} answered queries", coverage.len());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (train, test) = coverage.partial_shuffle(&mut rng, train_count);
    Split::new(train.to_vec(), test.to_vec())
}
