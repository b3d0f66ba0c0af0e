use std::collections::HashMap;

use crate::{Error, Result, TokenSequence};

/// Token/id maps and document frequencies, frozen after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    ids: HashMap<String, u32>,
    tokens: Vec<String>,
    df: Vec<u32>,
    num_docs: u32,
}

impl Vocabulary {
    /// Assigns dense ids in first-occurrence order and counts, for every
    /// token, the documents that contain it.
    pub fn build<'a>(docs: impl IntoIterator<Item = &'a TokenSequence>) -> Result<Self> {
        let mut ids: HashMap<String, u32> = HashMap::new();
        let mut tokens = Vec::new();
        let mut df: Vec<u32> = Vec::new();
        let mut num_docs = 0u32;
        let mut last_seen: Vec<u32> = Vec::new();
        for doc in docs {
            num_docs += 1;
            for token in doc {
                let id = *ids.entry(token.clone()).or_insert_with(|| {
                    tokens.push(token.clone());
                    df.push(0);
                    last_seen.push(0);
                    (tokens.len() - 1) as u32
                });
                let slot = id as usize;
                if last_seen[slot] != num_docs {
                    last_seen[slot] = num_docs;
                    df[slot] += 1;
                }
            }
        }
        if num_docs == 0 {
            return Err(Error::InvalidInput(
                "cannot build a vocabulary from zero documents".into(),
            ));
        }
        Ok(Vocabulary {
            ids,
            tokens,
            df,
            num_docs,
        })
    }

    /// Rebuilds a vocabulary from stored parts, checking `1 <= df <= N`.
    pub(crate) fn from_parts(tokens: Vec<String>, df: Vec<u32>, num_docs: u32) -> Result<Self> {
        if num_docs == 0 {
            return Err(Error::InvalidInput(
                "vocabulary needs at least one document".into(),
            ));
        }
        let mut ids = HashMap::with_capacity(tokens.len());
        for (i, (token, &d)) in tokens.iter().zip(&df).enumerate() {
            if d == 0 || d > num_docs {
                return Err(Error::InvalidInput(format!(
                    "token {token:?} has df {d} outside 1..={num_docs}"
                )));
            }
            if ids.insert(token.clone(), i as u32).is_some() {
                return Err(Error::InvalidInput(format!("token {token:?} listed twice")));
            }
        }
        Ok(Vocabulary {
            ids,
            tokens,
            df,
            num_docs,
        })
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn df(&self, id: u32) -> Option<u32> {
        self.df.get(id as usize).copied()
    }

    pub fn num_docs(&self) -> u32 {
        self.num_docs
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Smoothed inverse document frequency: `ln((1 + N) / (1 + df)) + 1`.
    pub fn idf(&self, id: u32) -> Result<f64> {
        let df = self.df(id).ok_or(Error::UnknownToken(id))?;
        Ok(smoothed_idf(self.num_docs, df))
    }
}

pub(crate) fn smoothed_idf(num_docs: u32, df: u32) -> f64 {
    ((1.0 + num_docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

pub fn build_vocabulary(docs: &[TokenSequence]) -> Result<Vocabulary> {
    Vocabulary::build(docs)
}

pub fn idf(vocab: &Vocabulary, token_id: u32) -> Result<f64> {
    vocab.idf(token_id)
}
