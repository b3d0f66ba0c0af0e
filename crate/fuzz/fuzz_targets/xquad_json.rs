#![no_main]

use libfuzzer_sys::fuzz_target;
use stfidf::eval::parse_xquad;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(split) = parse_xquad("fuzz", s, "en") {
            for q in &split.questions {
                assert!(split.paragraphs.iter().any(|p| p.id == q.paragraph_id));
            }
        }
    }
});
