//! TF-IDF vector space model over arbitrary token streams.
//!
//! Weights are raw term counts times a smoothed inverse document frequency,
//! `ln((1 + N) / (1 + df)) + 1`, L2-normalized per vector. Queries use the
//! same weighting with the index's document frequencies, and tokens missing
//! from the vocabulary are dropped.

mod inverted;
mod io;
mod sparse;
mod vocab;

pub use inverted::{build_index, Hit, Index};
pub use io::{load_index, parse_index, save_index, write_index, INDEX_FORMAT_VERSION, INDEX_MAGIC};
pub use sparse::{cosine, vectorize, SparseVector};
pub use vocab::{build_vocabulary, idf, Vocabulary};
