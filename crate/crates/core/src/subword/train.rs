use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::alphabet::select_alphabet;
use super::model::BpeModel;
use super::pretokenize::{split_units, UNK};
use crate::{Error, Result};

/// Pairs seen fewer times than this are never merged.
const MIN_PAIR_COUNT: i64 = 2;

type Pair = (u32, u32);

/// Heap entry. Orders by count, then by the lexicographically smallest
/// `(left, right)` strings, so the heap top is the next merge.
#[derive(Debug, PartialEq, Eq)]
struct Candidate {
    count: i64,
    left: String,
    right: String,
    pair: Pair,
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.count
            .cmp(&other.count)
            .then_with(|| other.left.cmp(&self.left))
            .then_with(|| other.right.cmp(&self.right))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Word {
    symbols: Vec<u32>,
    count: i64,
}

struct Trainer {
    pieces: Vec<String>,
    piece_ids: HashMap<String, u32>,
    words: Vec<Word>,
    pair_counts: HashMap<Pair, i64>,
    pair_words: HashMap<Pair, HashSet<usize>>,
    heap: BinaryHeap<Candidate>,
    unk: u32,
}

impl Trainer {
    fn push(&mut self, pair: Pair) {
        let count = self.pair_counts.get(&pair).copied().unwrap_or(0);
        if count >= MIN_PAIR_COUNT {
            self.heap.push(Candidate {
                count,
                left: self.pieces[pair.0 as usize].clone(),
                right: self.pieces[pair.1 as usize].clone(),
                pair,
            });
        }
    }

    fn count_word(&mut self, w: usize, sign: i64, touched: &mut HashSet<Pair>) {
        let word = &self.words[w];
        let delta = sign * word.count;
        for pair in word.symbols.windows(2).map(|p| (p[0], p[1])) {
            *self.pair_counts.entry(pair).or_default() += delta;
            if sign > 0 {
                self.pair_words.entry(pair).or_default().insert(w);
            }
            touched.insert(pair);
        }
    }

    /// Pops the most frequent eligible pair, skipping stale heap entries.
    fn next_merge(&mut self) -> Option<Pair> {
        while let Some(top) = self.heap.pop() {
            let current = self.pair_counts.get(&top.pair).copied().unwrap_or(0);
            if current != top.count {
                continue;
            }
            if top.pair.0 == self.unk || top.pair.1 == self.unk {
                continue;
            }
            // A piece string is created once, so a pair whose concatenation
            // already exists is never merged.
            if self
                .piece_ids
                .contains_key(&format!("{}{}", top.left, top.right))
            {
                continue;
            }
            return Some(top.pair);
        }
        None
    }

    fn apply(&mut self, pair: Pair, result: u32) {
        let mut affected: Vec<usize> = self
            .pair_words
            .remove(&pair)
            .map(|s| s.into_iter().collect())
            .unwrap_or_default();
        affected.sort_unstable();
        let mut touched = HashSet::new();
        for w in affected {
            if !self.words[w]
                .symbols
                .windows(2)
                .any(|p| (p[0], p[1]) == pair)
            {
                continue;
            }
            self.count_word(w, -1, &mut touched);
            let symbols = &mut self.words[w].symbols;
            let mut merged = Vec::with_capacity(symbols.len());
            let mut i = 0;
            while i < symbols.len() {
                if i + 1 < symbols.len() && (symbols[i], symbols[i + 1]) == pair {
                    merged.push(result);
                    i += 2;
                } else {
                    merged.push(symbols[i]);
                    i += 1;
                }
            }
            *symbols = merged;
            self.count_word(w, 1, &mut touched);
        }
        let mut touched: Vec<Pair> = touched.into_iter().collect();
        touched.sort_unstable();
        for p in touched {
            if self.pair_counts.get(&p).copied().unwrap_or(0) <= 0 {
                self.pair_counts.remove(&p);
                self.pair_words.remove(&p);
            } else {
                self.push(p);
            }
        }
    }
}

/// Learns a merge-rank BPE model from `corpus`.
///
/// The corpus is split into units (see [`super::split_units`]); scalars
/// outside the alphabet chosen for `coverage` are replaced by UNK. The most
/// frequent adjacent pair is merged repeatedly, ties going to the
/// lexicographically smallest `(left, right)`, until the model has
/// `vocab_size` pieces or no pair occurs at least twice. Pairs involving UNK
/// are never merged.
pub fn train_bpe(corpus: &str, vocab_size: usize, coverage: f64) -> Result<BpeModel> {
    let alphabet = select_alphabet(corpus, coverage)?;
    if vocab_size <= alphabet.len() {
        return Err(Error::Config(format!(
            "vocab size {vocab_size} must exceed the alphabet size {}",
            alphabet.len()
        )));
    }

    let pieces: Vec<String> = alphabet.iter().map(|c| c.to_string()).collect();
    let piece_ids: HashMap<String, u32> = pieces
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let unk = piece_ids[&UNK.to_string()];

    let mut unit_counts: HashMap<String, i64> = HashMap::new();
    for unit in split_units(corpus) {
        *unit_counts.entry(unit).or_default() += 1;
    }
    let mut units: Vec<(String, i64)> = unit_counts.into_iter().collect();
    units.sort_unstable();
    let words = units
        .into_iter()
        .map(|(unit, count)| Word {
            symbols: unit
                .chars()
                .map(|c| {
                    piece_ids
                        .get(c.to_string().as_str())
                        .copied()
                        .unwrap_or(unk)
                })
                .collect(),
            count,
        })
        .collect();

    let mut trainer = Trainer {
        pieces,
        piece_ids,
        words,
        pair_counts: HashMap::new(),
        pair_words: HashMap::new(),
        heap: BinaryHeap::new(),
        unk,
    };
    let mut touched = HashSet::new();
    for w in 0..trainer.words.len() {
        trainer.count_word(w, 1, &mut touched);
    }
    let mut touched: Vec<Pair> = touched.into_iter().collect();
    touched.sort_unstable();
    for p in touched {
        trainer.push(p);
    }

    let mut merges = Vec::new();
    while trainer.pieces.len() < vocab_size {
        let Some(pair) = trainer.next_merge() else {
            break;
        };
        let left = trainer.pieces[pair.0 as usize].clone();
        let right = trainer.pieces[pair.1 as usize].clone();
        let merged = format!("{left}{right}");
        let id = trainer.pieces.len() as u32;
        trainer.pieces.push(merged.clone());
        trainer.piece_ids.insert(merged, id);
        trainer.apply(pair, id);
        merges.push((left, right));
    }

    BpeModel::from_merges(alphabet, merges, coverage)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tie_prefers_lexicographically_smaller_pair() {
        // units: "▁aa" x3; pairs (▁,a)=3 and (a,a)=3; "a" < "▁"
        let m = train_bpe("aa aa aa", 4, 1.0).unwrap();
        assert_eq!(m.merges(), [("a".to_string(), "a".to_string())]);
        assert_eq!(m.num_pieces(), 4);
    }

    #[test]
    fn stops_when_no_pair_repeats() {
        let m = train_bpe("a", 100, 1.0).unwrap();
        assert!(m.merges().is_empty());
        let m = train_bpe("aaaa", 100, 1.0).unwrap();
        // (a,a) occurs 3 times in ▁aaaa; afterwards ▁ aa aa has only singletons
        assert_eq!(m.merges().len(), 1);
        assert!(m.num_pieces() < 100);
    }

    #[test]
    fn deterministic() {
        let corpus = "the quick brown fox jumps over the lazy dog. the dog sleeps.";
        let a = train_bpe(corpus, 40, 1.0).unwrap();
        let b = train_bpe(corpus, 40, 1.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num_pieces(), a.alphabet().len() + a.merges().len());
    }

    #[test]
    fn vocab_must_exceed_alphabet() {
        assert!(matches!(train_bpe("abc", 5, 1.0), Err(Error::Config(_))));
        assert!(matches!(
            train_bpe("   ", 50, 1.0),
            Err(Error::InvalidCorpus(_))
        ));
    }

    #[test]
    fn low_coverage_maps_rare_scalars_to_unk() {
        let corpus = format!("{} q", "ab ".repeat(200));
        let m = train_bpe(&corpus, 20, 0.99).unwrap();
        assert!(!m.alphabet().contains(&'q'));
        assert!(m
            .merges()
            .iter()
            .all(|(l, r)| !l.contains(UNK) && !r.contains(UNK)));
        assert_eq!(m.encode("q").pieces(), ["▁", "\u{FFFD}"]);
    }
}
