//! Byte-pair-encoding subword model.
//!
//! Training runs in three steps: mix per-language corpora with temperature
//! sampling ([`compute_sampling_weights`], [`sample_training_corpus`]), pick
//! the alphabet that reaches the requested character coverage
//! ([`select_alphabet`]), then learn merges ([`train_bpe`]). A trained or
//! imported [`BpeModel`] segments arbitrary text with [`BpeModel::encode`];
//! characters outside the alphabet become the [`UNK`] piece, so encoding
//! never fails.

mod alphabet;
mod io;
mod model;
mod pretokenize;
mod sampling;
mod train;

pub use alphabet::select_alphabet;
pub use io::{
    import_external_vocab, load_model, parse_external_vocab, parse_model, save_model, write_model,
    MODEL_FORMAT_VERSION, MODEL_MAGIC,
};
pub use model::{BpeModel, EncodeMode, SubwordSequence};
pub use pretokenize::{normalize, split_units, UNK, WORD_BOUNDARY};
pub use sampling::{
    compute_sampling_weights, sample_training_corpus, CorpusSource, LanguageStats, SamplingWeights,
};
pub use train::train_bpe;
