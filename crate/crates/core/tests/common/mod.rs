//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use rand::Rng;
use stfidf::subword::{select_alphabet, split_units, UNK};
use stfidf::TokenSequence;

/// Brute-force TF-IDF cosine ranking over dense vectors.
///
/// Returns `(doc, score)` for every document with a positive score, by
/// descending score then ascending position.
pub fn dense_rank(docs: &[Vec<String>], query: &[String]) -> Vec<(usize, f64)> {
    let mut terms: Vec<&str> = docs.iter().flatten().map(String::as_str).collect();
    terms.sort_unstable();
    terms.dedup();
    let column: HashMap<&str, usize> = terms.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let n = docs.len() as f64;
    let mut df = vec![0.0f64; terms.len()];
    for doc in docs {
        let distinct: HashSet<&str> = doc.iter().map(String::as_str).collect();
        for t in distinct {
            df[column[t]] += 1.0;
        }
    }
    let idf: Vec<f64> = df
        .iter()
        .map(|d| ((1.0 + n) / (1.0 + d)).ln() + 1.0)
        .collect();

    let dense = |tokens: &[String]| -> Vec<f64> {
        let mut v = vec![0.0f64; terms.len()];
        for t in tokens {
            if let Some(&c) = column.get(t.as_str()) {
                v[c] += 1.0;
            }
        }
        for (x, w) in v.iter_mut().zip(&idf) {
            *x *= w;
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    };
    let q = dense(query);
    let mut scored: Vec<(usize, f64)> = docs
        .iter()
        .enumerate()
        .map(|(i, d)| (i, dense(d).iter().zip(&q).map(|(a, b)| a * b).sum::<f64>()))
        .filter(|&(_, s)| s > 0.0)
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    scored
}

/// Random corpus of `Zipf`-ish synthetic words `w0`, `w1`, ...
pub fn random_corpus(
    rng: &mut impl Rng,
    max_docs: usize,
    max_len: usize,
    vocab: usize,
) -> Vec<Vec<String>> {
    let docs = rng.random_range(1..=max_docs);
    (0..docs)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            (0..len).map(|_| random_word(rng, vocab)).collect()
        })
        .collect()
}

pub fn random_word(rng: &mut impl Rng, vocab: usize) -> String {
    let u: f64 = rng.random();
    format!("w{}", ((vocab as f64).powf(u) - 1.0) as usize)
}

pub fn to_sequences(docs: &[Vec<String>]) -> Vec<(String, TokenSequence)> {
    docs.iter()
        .enumerate()
        .map(|(i, d)| (format!("doc{i}"), TokenSequence::from(d.clone())))
        .collect()
}

/// Naive BPE: recounts every pair from scratch before each merge.
///
/// Same contract as the trainer: most frequent pair first, ties to the
/// smallest `(left, right)`, at least two occurrences, never merging UNK or a
/// pair whose concatenation is already a piece.
pub fn brute_force_bpe(corpus: &str, vocab_size: usize, coverage: f64) -> Vec<(String, String)> {
    let alphabet = select_alphabet(corpus, coverage).unwrap();
    let unk = UNK.to_string();
    let mut pieces: HashSet<String> = alphabet.iter().map(|c| c.to_string()).collect();
    let mut words: Vec<Vec<String>> = split_units(corpus)
        .into_iter()
        .map(|u| {
            u.chars()
                .map(|c| {
                    if alphabet.contains(&c) {
                        c.to_string()
                    } else {
                        unk.clone()
                    }
                })
                .collect()
        })
        .collect();
    let mut merges = Vec::new();
    while pieces.len() < vocab_size {
        let mut counts: BTreeMap<(String, String), usize> = BTreeMap::new();
        for w in &words {
            for p in w.windows(2) {
                *counts.entry((p[0].clone(), p[1].clone())).or_default() += 1;
            }
        }
        let best = counts
            .into_iter()
            .filter(|((l, r), c)| {
                *c >= 2 && *l != unk && *r != unk && !pieces.contains(&format!("{l}{r}"))
            })
            .fold(
                None::<((String, String), usize)>,
                |best, (pair, c)| match best {
                    Some((_, bc)) if bc >= c => best,
                    _ => Some((pair, c)),
                },
            );
        let Some(((l, r), _)) = best else { break };
        let merged = format!("{l}{r}");
        for w in &mut words {
            let mut out = Vec::with_capacity(w.len());
            let mut i = 0;
            while i < w.len() {
                if i + 1 < w.len() && w[i] == l && w[i + 1] == r {
                    out.push(merged.clone());
                    i += 2;
                } else {
                    out.push(w[i].clone());
                    i += 1;
                }
            }
            *w = out;
        }
        pieces.insert(merged);
        merges.push((l, r));
    }
    merges
}

/// `D_l^(1/T) / sum_k D_k^(1/T)` with 60 correct decimal digits, via integer
/// n-th roots. Only integer temperatures are supported.
pub fn exact_sampling_weights(sizes: &[u64], temperature: u32) -> Vec<f64> {
    const DIGITS: u32 = 60;
    let scale = BigUint::from(10u32).pow(DIGITS * temperature);
    let roots: Vec<BigUint> = sizes
        .iter()
        .map(|&d| (BigUint::from(d) * &scale).nth_root(temperature))
        .collect();
    let total: BigUint = roots.iter().sum();
    let out_scale = BigUint::from(10u32).pow(30);
    roots
        .iter()
        .map(|r| {
            let q = r * &out_scale / &total;
            q.to_string().parse::<f64>().unwrap() / 1e30
        })
        .collect()
}

/// Decodes pieces back to text.
pub fn decode(pieces: &[String]) -> String {
    let joined: String = pieces.concat().replace('\u{2581}', " ");
    joined.strip_prefix(' ').unwrap_or(&joined).to_string()
}
