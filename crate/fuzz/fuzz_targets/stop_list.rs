#![no_main]

use libfuzzer_sys::fuzz_target;
use stfidf::text::{remove_stop_words, word_tokenize, StopList};

fuzz_target!(|s: &str| {
    if let Ok(stops) = StopList::parse("fuzz", s) {
        let kept = remove_stop_words(word_tokenize(s), &stops);
        assert!(kept.iter().all(|t| !stops.contains(t)));
    }
});
