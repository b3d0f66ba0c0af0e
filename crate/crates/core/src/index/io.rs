//! Line-oriented index persistence.
//!
//! ```text
//! STFIDF-IDX 1
//! N <document count>
//! K <key>\t<value>            metadata, any number
//! D <doc id>                  one per document, in insertion order
//! T <df>\t<token>             one per token, in id order
//! P <token id>\t<doc>:<weight> <doc>:<weight> ...
//! ```
//!
//! Strings escape `\`, tab, CR and LF. Weights are written in shortest
//! round-trip form, so a loaded index scores bit-identically.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::inverted::Index;
use super::sparse::SparseVector;
use super::vocab::Vocabulary;
use crate::{Error, Result};

pub const INDEX_MAGIC: &str = "STFIDF-IDX";
pub const INDEX_FORMAT_VERSION: u32 = 1;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match chars.next()? {
            '\\' => '\\',
            't' => '\t',
            'n' => '\n',
            'r' => '\r',
            _ => return None,
        });
    }
    Some(out)
}

pub fn write_index(index: &Index) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{INDEX_MAGIC} {INDEX_FORMAT_VERSION}");
    let _ = writeln!(out, "N {}", index.vocabulary().num_docs());
    for (key, value) in index.metadata() {
        let _ = writeln!(out, "K {}\t{}", escape(key), escape(value));
    }
    for id in index.doc_ids() {
        let _ = writeln!(out, "D {}", escape(id));
    }
    let vocab = index.vocabulary();
    for (id, token) in vocab.tokens().iter().enumerate() {
        let df = vocab.df(id as u32).expect("dense ids");
        let _ = writeln!(out, "T {df}\t{}", escape(token));
    }
    for id in 0..vocab.len() as u32 {
        let _ = write!(out, "P {id}\t");
        for (i, (doc, w)) in index.postings(id).iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{doc}:{w}");
        }
        out.push('\n');
    }
    out
}

pub fn save_index(index: &Index, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, write_index(index)).map_err(|e| Error::io("index", path, e))
}

pub fn load_index(path: impl AsRef<Path>) -> Result<Index> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io("index", path, e))?;
    parse_index(&path.display().to_string(), &text)
}

pub fn parse_index(source_name: &str, text: &str) -> Result<Index> {
    let err = |line: usize, msg: String| Error::parse(source_name, line, msg);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.is_empty());

    let (_, header) = lines
        .next()
        .ok_or_else(|| err(1, "empty index file".into()))?;
    let (magic, version) = header.split_once(' ').unwrap_or((header, ""));
    if magic != INDEX_MAGIC {
        return Err(err(
            1,
            format!("expected header starting with {INDEX_MAGIC}"),
        ));
    }
    if version != "1" {
        return Err(Error::Version {
            format: INDEX_MAGIC,
            found: version.to_string(),
            expected: INDEX_FORMAT_VERSION,
        });
    }

    let mut num_docs: Option<u32> = None;
    let mut metadata = Vec::new();
    let mut doc_ids = Vec::new();
    let mut tokens = Vec::new();
    let mut dfs = Vec::new();
    let mut postings: Vec<Vec<(u32, f64)>> = Vec::new();
    for (n, line) in lines {
        let (tag, rest) = line
            .split_once(' ')
            .ok_or_else(|| err(n, format!("malformed record {line:?}")))?;
        let text_field =
            |s: &str| unescape(s).ok_or_else(|| err(n, format!("bad escape in {s:?}")));
        match tag {
            "N" => {
                if num_docs.is_some() {
                    return Err(err(n, "document count given twice".into()));
                }
                num_docs = Some(
                    rest.parse()
                        .map_err(|_| err(n, format!("invalid count {rest:?}")))?,
                );
            }
            "K" => {
                let (k, v) = rest
                    .split_once('\t')
                    .ok_or_else(|| err(n, "metadata needs key\\tvalue".into()))?;
                metadata.push((text_field(k)?, text_field(v)?));
            }
            "D" => doc_ids.push(text_field(rest)?),
            "T" => {
                let (df, token) = rest
                    .split_once('\t')
                    .ok_or_else(|| err(n, "token needs df\\ttoken".into()))?;
                dfs.push(
                    df.parse::<u32>()
                        .map_err(|_| err(n, format!("invalid df {df:?}")))?,
                );
                tokens.push(text_field(token)?);
            }
            "P" => {
                let (id, list) = rest
                    .split_once('\t')
                    .ok_or_else(|| err(n, "postings need id\\tlist".into()))?;
                let id: usize = id
                    .parse()
                    .map_err(|_| err(n, format!("invalid token id {id:?}")))?;
                if id != postings.len() {
                    return Err(err(n, format!("postings for token {id} out of order")));
                }
                let docs =
                    num_docs.ok_or_else(|| err(n, "postings before document count".into()))?;
                let mut list_out = Vec::new();
                for entry in list.split(' ').filter(|e| !e.is_empty()) {
                    let (doc, w) = entry
                        .split_once(':')
                        .ok_or_else(|| err(n, format!("malformed posting {entry:?}")))?;
                    let doc: u32 = doc
                        .parse()
                        .map_err(|_| err(n, format!("invalid doc {doc:?}")))?;
                    let w: f64 = w
                        .parse()
                        .map_err(|_| err(n, format!("invalid weight {w:?}")))?;
                    if doc >= docs || !(w.is_finite() && w > 0.0) {
                        return Err(err(n, format!("posting {entry:?} out of range")));
                    }
                    if list_out.last().is_some_and(|&(prev, _)| prev >= doc) {
                        return Err(err(n, "postings must be sorted by document".into()));
                    }
                    list_out.push((doc, w));
                }
                postings.push(list_out);
            }
            other => return Err(err(n, format!("unknown record type {other:?}"))),
        }
    }

    let num_docs = num_docs.ok_or_else(|| err(0, "missing document count".into()))?;
    if doc_ids.len() != num_docs as usize {
        return Err(err(
            0,
            format!("expected {num_docs} documents, found {}", doc_ids.len()),
        ));
    }
    if postings.len() != tokens.len() {
        return Err(err(
            0,
            format!(
                "{} tokens but {} posting lists",
                tokens.len(),
                postings.len()
            ),
        ));
    }
    for (id, (list, &df)) in postings.iter().zip(&dfs).enumerate() {
        if list.len() != df as usize {
            return Err(err(
                0,
                format!("token {id}: df {df} but {} postings", list.len()),
            ));
        }
    }
    let mut seen = std::collections::HashSet::new();
    if let Some(dup) = doc_ids.iter().find(|id| !seen.insert(id.as_str())) {
        return Err(Error::InvalidInput(format!(
            "duplicate document id {dup:?}"
        )));
    }

    let vocabulary = Vocabulary::from_parts(tokens, dfs, num_docs)?;
    let mut entries: Vec<Vec<(u32, f64)>> = vec![Vec::new(); num_docs as usize];
    for (id, list) in postings.iter().enumerate() {
        for &(doc, w) in list {
            entries[doc as usize].push((id as u32, w));
        }
    }
    let doc_vectors: Vec<SparseVector> = entries
        .into_iter()
        .map(SparseVector::from_normalized)
        .collect();
    if let Some(doc) = doc_vectors
        .iter()
        .position(|v| !v.is_empty() && (v.norm() - 1.0).abs() > 1e-9)
    {
        return Err(err(0, format!("document {doc} vector is not unit length")));
    }
    let mut index = Index::from_vectors(vocabulary, doc_ids, doc_vectors);
    index.metadata_mut().extend(metadata);
    Ok(index)
}
