use serde::{Deserialize, Serialize};

use crate::SetError;

/// A finite set with an ordered list of distinct element labels.
///
/// Elements are addressed by their position `0..size`; labels are only used
/// for input and output.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinSet {
    labels: Vec<String>,
}

impl FinSet {
    /// The set `{0, .., n-1}` with default labels `"0".."n-1"`.
    pub fn new(n: usize) -> Self {
        FinSet {
            labels: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    /// A set with explicit labels, which must be pairwise distinct.
    pub fn with_labels<I, L>(labels: I) -> Result<Self, SetError>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(SetError::DuplicateLabel(w[0].clone()));
            }
        }
        Ok(FinSet { labels })
    }

    /// A one-element set labelled `"pt"`.
    pub fn point() -> Self {
        FinSet {
            labels: vec!["pt".to_string()],
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}
