use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::{Error, Result, TokenSequence};

/// Identifier of the built-in English stop list.
pub const ENGLISH_STOP_LIST_ID: &str = "english";

const ENGLISH_STOP_WORDS: &str = include_str!("../../data/english.stop");

/// A set of lowercase stop words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopList {
    words: HashSet<String>,
    source_id: String,
}

impl StopList {
    /// Parses a stop-list file: one word per line, `#` starts a comment.
    ///
    /// Entries are lowercased. A list with no entries is rejected.
    pub fn parse(source_id: &str, text: &str) -> Result<Self> {
        let words: HashSet<String> = text
            .lines()
            .map(|line| match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            })
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::to_lowercase)
            .collect();
        if words.is_empty() {
            return Err(Error::InvalidInput(format!(
                "stop list {source_id:?} has no entries"
            )));
        }
        Ok(StopList {
            words,
            source_id: source_id.to_string(),
        })
    }

    /// The built-in English list.
    pub fn english() -> Self {
        Self::parse(ENGLISH_STOP_LIST_ID, ENGLISH_STOP_WORDS).expect("built-in stop list is valid")
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io("stop list", path, e))?;
        Self::parse(&path.display().to_string(), &text)
    }

    /// Resolves a stop-list id: a built-in name, otherwise a file path.
    pub fn resolve(source_id: &str) -> Result<Self> {
        match source_id {
            ENGLISH_STOP_LIST_ID => Ok(Self::english()),
            path => Self::from_file(path),
        }
    }

    pub fn contains(&self, word: &str) -> bool {
        if word.chars().any(char::is_uppercase) {
            self.words.contains(&word.to_lowercase())
        } else {
            self.words.contains(word)
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Drops every token that is a member of `stops`, preserving order.
pub fn remove_stop_words(tokens: TokenSequence, stops: &StopList) -> TokenSequence {
    tokens.into_iter().filter(|t| !stops.contains(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn english_list_is_pinned() {
        let stops = StopList::english();
        assert_eq!(stops.len(), 179);
        assert_eq!(stops.source_id(), "english");
        assert!(stops.contains("the"));
        assert!(stops.contains("The"));
        assert!(!stops.contains("cat"));
        assert!(stops.words().all(|w| w == w.to_lowercase()));
    }

    #[test]
    fn filters_members() {
        let stops = StopList::english();
        let out = remove_stop_words(vec!["the", "cat", "sat"].into(), &stops);
        assert_eq!(out.as_slice(), ["cat", "sat"]);
        assert!(remove_stop_words(TokenSequence::default(), &stops).is_empty());
        let out = remove_stop_words(vec!["cat", "cat", "the", "the"].into(), &stops);
        assert_eq!(out.as_slice(), ["cat", "cat"]);
    }

    #[test]
    fn parse_handles_comments_and_case() {
        let stops = StopList::parse("t", "# header\nFoo\n\n  bar  # trailing\n").unwrap();
        assert_eq!(stops.len(), 2);
        assert!(stops.contains("foo"));
        assert!(stops.contains("bar"));
    }

    #[test]
    fn empty_list_is_rejected() {
        assert!(StopList::parse("t", "# nothing\n\n").is_err());
    }

    #[test]
    fn missing_file_reports_io_error() {
        let err = StopList::resolve("/nonexistent/stop.txt").unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    proptest! {
        #[test]
        fn output_is_a_stop_free_subsequence(words in proptest::collection::vec("(the|a|cat|dog|of|run|it)", 0..30)) {
            let stops = StopList::english();
            let input = TokenSequence::from(words.clone());
            let out = remove_stop_words(input.clone(), &stops);
            prop_assert!(out.len() <= input.len());
            prop_assert!(out.iter().all(|t| !stops.contains(t)));
            let expected: Vec<String> = words.into_iter().filter(|w| !stops.contains(w)).collect();
            prop_assert_eq!(out.into_vec(), expected);
        }
    }
}
