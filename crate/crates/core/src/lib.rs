//! Subword TF-IDF ranked retrieval.
//!
//! The crate is organised around four layers:
//!
//! - [`text`]: classical word-level preprocessing (word splitting, stop-word
//!   removal, Porter stemming) and the [`text::Pipeline`] that composes them
//!   with a subword encoder.
//! - [`subword`]: a trainable byte-pair-encoding model with character-coverage
//!   alphabet selection and temperature-sampled corpus mixing.
//! - [`index`]: the TF-IDF vector space model backed by an inverted index.
//! - [`eval`]: loading SQuAD-schema XQuAD files and measuring top-1 paragraph
//!   retrieval accuracy for any pipeline.
//!
//! ```
//! use stfidf::index::Index;
//! use stfidf::text::word_tokenize;
//!
//! let docs = vec![
//!     ("d0".to_string(), word_tokenize("The cat sat on the mat.")),
//!     ("d1".to_string(), word_tokenize("Dogs chase cats in the park.")),
//! ];
//! let index = Index::build(docs).unwrap();
//! let hits = index.query(&word_tokenize("where did the cat sit"), 1);
//! assert_eq!(hits[0].doc_id, "d0");
//! ```

pub mod error;
pub mod eval;
pub mod index;
pub mod languages;
pub mod subword;
pub mod text;
mod tokens;

pub use error::{Error, Result};
pub use tokens::TokenSequence;
