use std::collections::{BTreeSet, HashMap};

use super::pretokenize::{normalize, UNK, WORD_BOUNDARY};
use crate::{Error, Result};

/// Picks the smallest set of most frequent scalars covering at least
/// `coverage` of all scalar occurrences in the NFKC-normalized corpus.
///
/// Whitespace is not counted. Equal frequencies rank by ascending code point.
/// [`WORD_BOUNDARY`] and [`UNK`] are always part of the result.
pub fn select_alphabet(corpus: &str, coverage: f64) -> Result<BTreeSet<char>> {
    if !(coverage > 0.0 && coverage <= 1.0) {
        return Err(Error::Config(format!(
            "coverage {coverage} is outside (0, 1]"
        )));
    }
    let mut counts: HashMap<char, u64> = HashMap::new();
    for c in normalize(corpus).chars() {
        if !c.is_whitespace() && c != WORD_BOUNDARY {
            *counts.entry(c).or_default() += 1;
        }
    }
    if counts.is_empty() {
        return Err(Error::InvalidCorpus(
            "corpus has no non-whitespace characters".into(),
        ));
    }
    let total: u64 = counts.values().sum();
    let mut ranked: Vec<(char, u64)> = counts.into_iter().collect();
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let target = coverage * total as f64;
    let mut alphabet = BTreeSet::from([WORD_BOUNDARY, UNK]);
    let mut covered = 0u64;
    for (c, n) in ranked {
        if covered as f64 >= target {
            break;
        }
        alphabet.insert(c);
        covered += n;
    }
    Ok(alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn without_specials(alphabet: BTreeSet<char>) -> Vec<char> {
        alphabet
            .into_iter()
            .filter(|c| *c != WORD_BOUNDARY && *c != UNK)
            .collect()
    }

    #[test]
    fn exact_coverage_boundary() {
        let a = select_alphabet("aaab", 0.75).unwrap();
        assert!(a.contains(&WORD_BOUNDARY) && a.contains(&UNK));
        assert_eq!(without_specials(a), ['a']);
    }

    #[test]
    fn full_coverage_takes_everything() {
        let a = select_alphabet("hello world", 1.0).unwrap();
        assert_eq!(without_specials(a), ['d', 'e', 'h', 'l', 'o', 'r', 'w']);
    }

    #[test]
    fn cumulative_frequency() {
        let corpus = format!("{}{}{}", "a".repeat(90), "b".repeat(9), "c");
        assert_eq!(
            without_specials(select_alphabet(&corpus, 0.99).unwrap()),
            ['a', 'b']
        );
        assert_eq!(
            without_specials(select_alphabet(&corpus, 0.995).unwrap()),
            ['a', 'b', 'c']
        );
        assert_eq!(
            without_specials(select_alphabet(&corpus, 0.9).unwrap()),
            ['a']
        );
    }

    #[test]
    fn ties_break_by_code_point() {
        assert_eq!(
            without_specials(select_alphabet("cba", 0.5).unwrap()),
            ['a', 'b']
        );
    }

    #[test]
    fn rejects_empty_corpus_and_bad_coverage() {
        assert!(matches!(
            select_alphabet(" \n ", 0.5),
            Err(Error::InvalidCorpus(_))
        ));
        assert!(select_alphabet("abc", 0.0).is_err());
        assert!(select_alphabet("abc", 1.5).is_err());
        assert!(select_alphabet("abc", f64::NAN).is_err());
    }
}
