//! Classical word-level preprocessing and pipeline composition.

mod pipeline;
mod porter;
mod stop;
mod tokenize;

pub use pipeline::{run_pipeline, Pipeline, PipelineConfig, Stage};
pub use porter::porter_stem;
pub use stop::{remove_stop_words, StopList, ENGLISH_STOP_LIST_ID};
pub use tokenize::word_tokenize;
