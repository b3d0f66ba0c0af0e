use std::collections::BTreeMap;

use super::vocab::Vocabulary;
use crate::TokenSequence;

/// An L2-normalized sparse vector with strictly positive weights, sorted by id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    /// Normalizes raw weights to unit length.
    ///
    /// Weights for a repeated id are summed. Non-positive and non-finite
    /// weights are dropped; if nothing remains the vector is empty.
    pub fn from_weights(weights: impl IntoIterator<Item = (u32, f64)>) -> Self {
        let mut summed: BTreeMap<u32, f64> = BTreeMap::new();
        for (id, w) in weights {
            *summed.entry(id).or_default() += w;
        }
        let entries: Vec<(u32, f64)> = summed
            .into_iter()
            .filter(|(_, w)| w.is_finite() && *w > 0.0)
            .collect();
        let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return SparseVector::default();
        }
        SparseVector {
            entries: entries.into_iter().map(|(id, w)| (id, w / norm)).collect(),
        }
    }

    /// Wraps entries that are already sorted, positive and normalized.
    pub(crate) fn from_normalized(entries: Vec<(u32, f64)>) -> Self {
        SparseVector { entries }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: u32) -> Option<f64> {
        self.entries
            .binary_search_by_key(&id, |(i, _)| *i)
            .ok()
            .map(|pos| self.entries[pos].1)
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }
}

/// TF-IDF vector of a token sequence: raw count times idf, L2-normalized.
///
/// Tokens absent from `vocab` are ignored.
pub fn vectorize(tokens: &TokenSequence, vocab: &Vocabulary) -> SparseVector {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for token in tokens {
        if let Some(id) = vocab.id(token) {
            *counts.entry(id).or_default() += 1;
        }
    }
    SparseVector::from_weights(
        counts
            .into_iter()
            .map(|(id, n)| (id, n as f64 * vocab.idf(id).expect("id from vocabulary"))),
    )
}

/// Dot product of two normalized vectors; 0 when either is empty.
pub fn cosine(a: &SparseVector, b: &SparseVector) -> f64 {
    let (mut i, mut j) = (0, 0);
    let (a, b) = (a.entries(), b.entries());
    let mut dot = 0.0;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                dot += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    dot
}
