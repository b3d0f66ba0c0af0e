use crate::TokenSequence;

/// Splits `text` into lowercase word tokens.
///
/// The text is lowercased first, then split on every scalar that is neither
/// alphabetic nor numeric. Empty fragments are discarded.
pub fn word_tokenize(text: &str) -> TokenSequence {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}
