#![no_main]

use libfuzzer_sys::fuzz_target;
use stfidf::subword::parse_external_vocab;

fuzz_target!(|s: &str| {
    if let Ok(model) = parse_external_vocab(s) {
        for piece in model.encode(s).pieces() {
            assert!(model.contains_piece(piece));
        }
    }
});
