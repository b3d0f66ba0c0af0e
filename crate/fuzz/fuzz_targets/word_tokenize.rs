#![no_main]

use libfuzzer_sys::fuzz_target;
use stfidf::text::{porter_stem, word_tokenize};

fuzz_target!(|s: &str| {
    let tokens = word_tokenize(s);
    assert_eq!(word_tokenize(&tokens.join(" ")), tokens);
    for t in tokens.iter() {
        let stem = porter_stem(t);
        assert!(stem.len() <= t.len());
    }
});
