use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Size of one language's monolingual corpus, in bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageStats {
    pub language: String,
    pub corpus_size: u64,
}

impl LanguageStats {
    pub fn new(language: impl Into<String>, corpus_size: u64) -> Self {
        LanguageStats {
            language: language.into(),
            corpus_size,
        }
    }
}

/// Per-language sampling probabilities after temperature rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingWeights {
    languages: Vec<String>,
    probabilities: Vec<f64>,
    temperature: f64,
}

impl SamplingWeights {
    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn get(&self, language: &str) -> Option<f64> {
        self.languages
            .iter()
            .position(|l| l == language)
            .map(|i| self.probabilities[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.languages
            .iter()
            .map(String::as_str)
            .zip(self.probabilities.iter().copied())
    }
}

/// Computes `p_l = D_l / sum(D)` and rescales it to `p_l^(1/T)`, renormalized.
///
/// With `T = 1` the plain proportions are returned untouched.
pub fn compute_sampling_weights(
    stats: &[LanguageStats],
    temperature: f64,
) -> Result<SamplingWeights> {
    if stats.is_empty() {
        return Err(Error::InvalidStats("no languages given".into()));
    }
    if !(temperature >= 1.0 && temperature.is_finite()) {
        return Err(Error::InvalidStats(format!(
            "temperature must be a finite value >= 1, got {temperature}"
        )));
    }
    let mut seen = HashSet::new();
    for s in stats {
        if s.corpus_size == 0 {
            return Err(Error::InvalidStats(format!(
                "language {:?} has an empty corpus",
                s.language
            )));
        }
        if !seen.insert(s.language.as_str()) {
            return Err(Error::InvalidStats(format!(
                "language {:?} listed twice",
                s.language
            )));
        }
    }

    let total: f64 = stats.iter().map(|s| s.corpus_size as f64).sum();
    let mut probabilities: Vec<f64> = stats.iter().map(|s| s.corpus_size as f64 / total).collect();
    if temperature != 1.0 {
        let exponent = temperature.recip();
        for p in &mut probabilities {
            *p = p.powf(exponent);
        }
        let norm: f64 = probabilities.iter().sum();
        for p in &mut probabilities {
            *p /= norm;
        }
    }
    Ok(SamplingWeights {
        languages: stats.iter().map(|s| s.language.clone()).collect(),
        probabilities,
        temperature,
    })
}

/// Where a language's monolingual text comes from.
#[derive(Debug, Clone)]
pub enum CorpusSource {
    File(PathBuf),
    Text(String),
}

impl CorpusSource {
    fn lines(&self, language: &str) -> Result<Vec<String>> {
        let text = match self {
            CorpusSource::File(path) => fs::read_to_string(path)
                .map_err(|e| Error::io(format!("corpus for language {language}"), path, e))?,
            CorpusSource::Text(text) => text.clone(),
        };
        Ok(text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(str::to_owned)
            .collect())
    }
}

/// Draws `budget` lines with replacement: each draw picks a language by
/// `weights`, then a uniformly random line of that language's corpus.
///
/// Lines are joined with `\n`. The output is a pure function of the inputs
/// and `seed`.
pub fn sample_training_corpus(
    sources: &[(String, CorpusSource)],
    weights: &SamplingWeights,
    budget: usize,
    seed: u64,
) -> Result<String> {
    if budget == 0 {
        return Err(Error::Config("sampling budget must be positive".into()));
    }
    let mut corpora = Vec::with_capacity(weights.languages().len());
    for language in weights.languages() {
        let source = sources
            .iter()
            .find(|(l, _)| l == language)
            .map(|(_, s)| s)
            .ok_or_else(|| {
                Error::InvalidCorpus(format!("no corpus source for language {language}"))
            })?;
        let lines = source.lines(language)?;
        if lines.is_empty() {
            return Err(Error::InvalidCorpus(format!(
                "corpus for language {language} has no lines"
            )));
        }
        corpora.push(lines);
    }

    let chooser = WeightedIndex::new(weights.probabilities())
        .map_err(|e| Error::InvalidStats(format!("unusable sampling weights: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    for i in 0..budget {
        let lines = &corpora[chooser.sample(&mut rng)];
        let line = &lines[rng.random_range(0..lines.len())];
        if i > 0 {
            out.push('\n');
        }
        out.push_str(line);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn stats(sizes: &[u64]) -> Vec<LanguageStats> {
        sizes
            .iter()
            .enumerate()
            .map(|(i, &d)| LanguageStats::new(format!("l{i}"), d))
            .collect()
    }

    #[test]
    fn symmetric_sizes_give_uniform_weights() {
        let w = compute_sampling_weights(&stats(&[100, 100]), 5.0).unwrap();
        assert_eq!(w.probabilities(), [0.5, 0.5]);
    }

    #[test]
    fn unit_temperature_is_identity() {
        let w = compute_sampling_weights(&stats(&[81, 16]), 1.0).unwrap();
        assert_eq!(w.probabilities(), [81.0 / 97.0, 16.0 / 97.0]);
    }

    #[test]
    fn temperature_five_flattens() {
        // 81^(1/5) / (81^(1/5) + 16^(1/5)) = 0.58038939202840216348...
        let w = compute_sampling_weights(&stats(&[81, 16]), 5.0).unwrap();
        assert!((w.probabilities()[0] - 0.580_389_392_028_402_2).abs() < 1e-12);
        assert!((w.probabilities()[1] - 0.419_610_607_971_597_8).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_stats() {
        assert!(matches!(
            compute_sampling_weights(&[], 5.0),
            Err(Error::InvalidStats(_))
        ));
        assert!(matches!(
            compute_sampling_weights(&stats(&[10, 0]), 5.0),
            Err(Error::InvalidStats(_))
        ));
        assert!(compute_sampling_weights(&stats(&[10]), 0.5).is_err());
        let dup = vec![LanguageStats::new("en", 1), LanguageStats::new("en", 2)];
        assert!(compute_sampling_weights(&dup, 1.0).is_err());
    }

    fn text_sources(texts: &[(&str, &str)]) -> Vec<(String, CorpusSource)> {
        texts
            .iter()
            .map(|(l, t)| (l.to_string(), CorpusSource::Text(t.to_string())))
            .collect()
    }

    #[test]
    fn single_language_corpus() {
        let sources = text_sources(&[("en", "one\ntwo\nthree")]);
        let w = compute_sampling_weights(&[LanguageStats::new("en", 13)], 5.0).unwrap();
        let corpus = sample_training_corpus(&sources, &w, 50, 7).unwrap();
        assert_eq!(corpus.lines().count(), 50);
        assert!(corpus.lines().all(|l| ["one", "two", "three"].contains(&l)));
    }

    #[test]
    fn balanced_counts_stay_within_three_sigma() {
        let sources = text_sources(&[("xx", "x1\nx2"), ("yy", "y1\ny2\ny3")]);
        let w = compute_sampling_weights(
            &[LanguageStats::new("xx", 10), LanguageStats::new("yy", 10)],
            5.0,
        )
        .unwrap();
        let corpus = sample_training_corpus(&sources, &w, 10_000, 42).unwrap();
        let xs = corpus.lines().filter(|l| l.starts_with('x')).count() as i64;
        // binomial(10000, 0.5): sigma = 50
        assert!((xs - 5_000).abs() <= 150, "x count {xs}");
    }

    #[test]
    fn same_seed_same_corpus() {
        let sources = text_sources(&[("a", "a1\na2\na3"), ("b", "b1\nb2")]);
        let w = compute_sampling_weights(
            &[LanguageStats::new("a", 9), LanguageStats::new("b", 4)],
            2.0,
        )
        .unwrap();
        let first = sample_training_corpus(&sources, &w, 500, 3).unwrap();
        assert_eq!(first, sample_training_corpus(&sources, &w, 500, 3).unwrap());
        assert_ne!(first, sample_training_corpus(&sources, &w, 500, 4).unwrap());
    }

    #[test]
    fn unreadable_source_names_the_language() {
        let sources = vec![(
            "de".to_string(),
            CorpusSource::File("/nonexistent/de.txt".into()),
        )];
        let w = compute_sampling_weights(&[LanguageStats::new("de", 1)], 1.0).unwrap();
        let err = sample_training_corpus(&sources, &w, 1, 0).unwrap_err();
        assert!(err.to_string().contains("language de"), "{err}");
    }

    proptest! {
        #[test]
        fn weights_sum_to_one_and_flatten(sizes in proptest::collection::vec(1u64..1_000_000, 1..12), t in 1.0f64..10.0) {
            let s = stats(&sizes);
            let w = compute_sampling_weights(&s, t).unwrap();
            let sum: f64 = w.probabilities().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
            prop_assert!(w.probabilities().iter().all(|&p| p > 0.0));

            let smallest = sizes.iter().enumerate().min_by_key(|(_, &d)| d).unwrap().0;
            let hotter = compute_sampling_weights(&s, t + 1.0).unwrap();
            prop_assert!(hotter.probabilities()[smallest] >= w.probabilities()[smallest] - 1e-15);
        }
    }
}
