//! The 100-language list the reference multilingual subword vocabulary covers.
//!
//! Shipped as `data/languages.tsv` (code, name) and used by the CLI to
//! validate `--languages` arguments.

use std::sync::LazyLock;

const LANGUAGES_TSV: &str = include_str!("../data/languages.tsv");

static LANGUAGES: LazyLock<Vec<(&'static str, &'static str)>> = LazyLock::new(|| {
    LANGUAGES_TSV
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('\t'))
        .collect()
});

/// The 12 XQuAD languages, in the order the dataset lists them.
pub const XQUAD_LANGUAGES: [&str; 12] = [
    "en", "es", "de", "el", "ru", "tr", "ar", "vi", "th", "zh", "hi", "ro",
];

/// All `(code, name)` pairs.
pub fn languages() -> &'static [(&'static str, &'static str)] {
    &LANGUAGES
}

pub fn is_known_language(code: &str) -> bool {
    LANGUAGES.iter().any(|(c, _)| *c == code)
}

pub fn language_name(code: &str) -> Option<&'static str> {
    LANGUAGES.iter().find(|(c, _)| *c == code).map(|(_, n)| *n)
}
