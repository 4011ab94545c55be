use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{bail, Result};

/// Index of a label inside a [`LabelAlphabet`].
///
/// Because the alphabet is stored sorted, comparing ids compares the labels
/// lexicographically; the smallest id wins every tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(u32);

impl LabelId {
    pub fn new(index: usize) -> Self {
        LabelId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of at least two distinct, non-empty label identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelAlphabet {
    labels: Vec<String>,
}

impl LabelAlphabet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(|s| s.as_ref().to_string()).collect();
        if labels.iter().any(|l| l.is_empty()) {
            bail!(Alphabet, "labels must be non-empty strings");
        }
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            bail!(Alphabet, "duplicate label {:?}", w[0]);
        }
        if labels.len() < 2 {
            bail!(Alphabet, "an alphabet needs at least two labels, got {}", labels.len());
        }
        Ok(LabelAlphabet { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.labels.len() == 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.labels[id.index()]
    }

    pub fn get(&self, label: &str) -> Option<LabelId> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok().map(LabelId::new)
    }

    pub fn lookup(&self, label: &str) -> Result<LabelId> {
        match self.get(label) {
            Some(id) => Ok(id),
            None => bail!(Alphabet, "unknown label {label:?}"),
        }
    }

    pub fn contains(&self, id: LabelId) -> bool {
        id.index() < self.labels.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = LabelId> + '_ {
        (0..self.labels.len()).map(LabelId::new)
    }

    /// The positive class of a binary alphabet: its larger label, so that a
    /// zero score falls to the smaller one.
    pub fn binary_pair(&self) -> Result<(LabelId, LabelId)> {
        if !self.is_binary() {
            bail!(Argument, "expected a binary alphabet, got {} labels", self.len());
        }
        Ok((LabelId::new(1), LabelId::new(0)))
    }
}
