#![no_main]

use libfuzzer_sys::fuzz_target;
use stfidf::index::{parse_index, write_index};
use stfidf::TokenSequence;

fuzz_target!(|s: &str| {
    if let Ok(index) = parse_index("fuzz", s) {
        let again = parse_index("fuzz", &write_index(&index)).expect("written index parses");
        assert_eq!(again, index);
        let query: TokenSequence = index
            .vocabulary()
            .tokens()
            .iter()
            .take(3)
            .cloned()
            .collect();
        let _ = index.query(&query, 5);
    }
});
