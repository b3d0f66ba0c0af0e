#![no_main]

use libfuzzer_sys::fuzz_target;
use stfidf::subword::{parse_model, write_model};

fuzz_target!(|s: &str| {
    if let Ok(model) = parse_model("fuzz", s) {
        let again = parse_model("fuzz", &write_model(&model)).expect("written model parses");
        assert_eq!(again, model);
        let _ = model.encode(s);
    }
});
