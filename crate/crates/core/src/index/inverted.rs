use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::sparse::{vectorize, SparseVector};
use super::vocab::Vocabulary;
use crate::{Error, Result, TokenSequence};

/// One ranked result.
#[derive(Debug, Clone, PartialEq)]
pub struct Hit {
    pub doc_id: String,
    /// Position of the document in insertion order.
    pub doc: usize,
    pub score: f64,
}

/// An immutable TF-IDF index.
///
/// Postings hold, for each token id, the `(document, weight)` pairs of every
/// document vector containing it, sorted by document.
#[derive(Debug, Clone, PartialEq)]
pub struct Index {
    vocabulary: Vocabulary,
    doc_ids: Vec<String>,
    doc_vectors: Vec<SparseVector>,
    postings: Vec<Vec<(u32, f64)>>,
    metadata: BTreeMap<String, String>,
}

impl Index {
    /// Builds the vocabulary, document vectors and postings.
    ///
    /// Document ids must be unique.
    pub fn build(docs: Vec<(String, TokenSequence)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(docs.len());
        for (id, _) in &docs {
            if !seen.insert(id.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate document id {id:?}")));
            }
        }
        let vocabulary = Vocabulary::build(docs.iter().map(|(_, tokens)| tokens))?;
        let doc_vectors: Vec<SparseVector> = docs
            .par_iter()
            .map(|(_, tokens)| vectorize(tokens, &vocabulary))
            .collect();
        let doc_ids = docs.into_iter().map(|(id, _)| id).collect();
        Ok(Self::from_vectors(vocabulary, doc_ids, doc_vectors))
    }

    pub(crate) fn from_vectors(
        vocabulary: Vocabulary,
        doc_ids: Vec<String>,
        doc_vectors: Vec<SparseVector>,
    ) -> Self {
        let mut postings = vec![Vec::new(); vocabulary.len()];
        for (doc, vector) in doc_vectors.iter().enumerate() {
            for &(id, w) in vector.entries() {
                postings[id as usize].push((doc as u32, w));
            }
        }
        Index {
            vocabulary,
            doc_ids,
            doc_vectors,
            postings,
            metadata: BTreeMap::new(),
        }
    }

    /// Attaches a free-form key/value pair that is persisted with the index.
    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub(crate) fn metadata_mut(&mut self) -> &mut BTreeMap<String, String> {
        &mut self.metadata
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn doc_vectors(&self) -> &[SparseVector] {
        &self.doc_vectors
    }

    pub fn postings(&self, token_id: u32) -> &[(u32, f64)] {
        self.postings
            .get(token_id as usize)
            .map_or(&[], Vec::as_slice)
    }

    pub fn num_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn vectorize(&self, tokens: &TokenSequence) -> SparseVector {
        vectorize(tokens, &self.vocabulary)
    }

    /// Top `k` documents by cosine similarity to the query.
    ///
    /// Only documents sharing at least one token with the query are scored.
    /// Scores are descending; equal scores keep insertion order.
    pub fn query(&self, tokens: &TokenSequence, k: usize) -> Vec<Hit> {
        self.query_vector(&self.vectorize(tokens), k)
    }

    pub fn query_vector(&self, query: &SparseVector, k: usize) -> Vec<Hit> {
        if k == 0 || query.is_empty() {
            return Vec::new();
        }
        let mut scores = vec![0.0f64; self.num_docs()];
        let mut touched = vec![false; self.num_docs()];
        for &(id, qw) in query.entries() {
            for &(doc, dw) in self.postings(id) {
                scores[doc as usize] += qw * dw;
                touched[doc as usize] = true;
            }
        }
        let mut ranked: Vec<(usize, f64)> = touched
            .iter()
            .enumerate()
            .filter(|(_, &t)| t)
            .map(|(doc, _)| (doc, scores[doc]))
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked.truncate(k);
        ranked
            .into_iter()
            .map(|(doc, score)| Hit {
                doc_id: self.doc_ids[doc].clone(),
                doc,
                score,
            })
            .collect()
    }
}

pub fn build_index(docs: Vec<(String, TokenSequence)>) -> Result<Index> {
    Index::build(docs)
}
