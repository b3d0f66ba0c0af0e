#![no_main]

use libfuzzer_sys::fuzz_target;
use stfidf::text::PipelineConfig;

fuzz_target!(|s: &str| {
    if let Ok(config) = s.parse::<PipelineConfig>() {
        let again: PipelineConfig = config.to_string().parse().expect("display output parses");
        assert_eq!(again, config);
    }
});
