#![no_main]

use std::sync::LazyLock;

use libfuzzer_sys::fuzz_target;
use stfidf::subword::{train_bpe, BpeModel};

static MODEL: LazyLock<BpeModel> = LazyLock::new(|| {
    train_bpe(
        "the quick brown fox jumps over the lazy dog. Ο γρήγορος σκύλος. 快速的狗",
        120,
        0.99,
    )
    .unwrap()
});

fuzz_target!(|s: &str| {
    let pieces = MODEL.encode(s);
    for piece in pieces.pieces() {
        assert!(MODEL.contains_piece(piece));
    }
    assert_eq!(MODEL.encode(s), pieces);
});
