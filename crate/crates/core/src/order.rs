//! Optional externally supplied vertex orderings, consulted at relabeling
//! tie-breaks.

use crate::label::Label;
use std::collections::HashMap;

/// Ranking over labels: smaller rank wins ties; unranked labels come after
/// every ranked one, ordered among themselves by label.
#[derive(Debug, Clone, Default)]
pub struct VertexRanking {
    by_label: HashMap<Label, u64>,
}

impl VertexRanking {
    pub fn new(order: impl IntoIterator<Item = Label>) -> Self {
        VertexRanking {
            by_label: order
                .into_iter()
                .enumerate()
                .map(|(i, l)| (l, i as u64))
                .collect(),
        }
    }

    pub fn rank(&self, label: Label) -> u64 {
        self.by_label.get(&label).copied().unwrap_or(u64::MAX)
    }
}

/// Ranking over source names, used while labeling circuit graphs.
#[derive(Debug, Clone, Default)]
pub struct NameRanking {
    by_name: HashMap<String, u64>,
}

impl NameRanking {
    pub fn new(order: impl IntoIterator<Item = String>) -> Self {
        NameRanking {
            by_name: order
                .into_iter()
                .enumerate()
                .map(|(i, n)| (n, i as u64))
                .collect(),
        }
    }

    pub fn rank(&self, name: &str) -> u64 {
        self.by_name.get(name).copied().unwrap_or(u64::MAX)
    }
}
