use unicode_normalization::UnicodeNormalization;

/// Prefix marking the start of a whitespace-delimited word (U+2581).
pub const WORD_BOUNDARY: char = '\u{2581}';

/// Piece standing in for every scalar outside the model alphabet (U+FFFD).
pub const UNK: char = '\u{FFFD}';

/// NFKC normalization.
pub fn normalize(text: &str) -> String {
    text.nfkc().collect()
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == WORD_BOUNDARY
}

/// Splits text into the units BPE merges are confined to.
///
/// The text is NFKC-normalized and split on whitespace. Each word is then cut
/// wherever it switches between alphanumeric and other scalars, the same
/// boundaries word tokenization uses, and its first unit is prefixed with
/// [`WORD_BOUNDARY`]. Concatenating the units, turning markers back into
/// spaces and dropping the leading one gives the whitespace-collapsed input.
pub fn split_units(text: &str) -> Vec<String> {
    let normalized = normalize(text);
    let mut units = Vec::new();
    for word in normalized.split(is_separator).filter(|w| !w.is_empty()) {
        let mut current = String::new();
        current.push(WORD_BOUNDARY);
        let mut class = None;
        for c in word.chars() {
            let alnum = c.is_alphanumeric();
            if class.is_some_and(|prev| prev != alnum) {
                units.push(std::mem::take(&mut current));
            }
            class = Some(alnum);
            current.push(c);
        }
        units.push(current);
    }
    units
}
