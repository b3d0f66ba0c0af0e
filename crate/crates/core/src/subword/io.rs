//! Model files and external vocabulary import.
//!
//! Model file layout (UTF-8, one record per line):
//!
//! ```text
//! STFIDF-BPE 1 <merge-rank|longest-match> <coverage>
//! A <scalar hex>          alphabet entry
//! M <left>\t<right>       merge, in training order
//! P <piece>               vocabulary piece
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use indexmap::IndexSet;

use super::model::{BpeModel, EncodeMode};
use super::pretokenize::{UNK, WORD_BOUNDARY};
use crate::{Error, Result};

pub const MODEL_MAGIC: &str = "STFIDF-BPE";
pub const MODEL_FORMAT_VERSION: u32 = 1;

/// Name an imported vocabulary may use for the unknown piece.
const EXTERNAL_UNK: &str = "<unk>";

/// Serializes a model to the text format.
pub fn write_model(model: &BpeModel) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{MODEL_MAGIC} {MODEL_FORMAT_VERSION} {} {}",
        model.mode(),
        model.coverage()
    );
    for c in model.alphabet() {
        let _ = writeln!(out, "A {:x}", *c as u32);
    }
    for (left, right) in model.merges() {
        let _ = writeln!(out, "M {left}\t{right}");
    }
    for piece in model.pieces() {
        let _ = writeln!(out, "P {piece}");
    }
    out
}

pub fn save_model(model: &BpeModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, write_model(model)).map_err(|e| Error::io("subword model", path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<BpeModel> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io("subword model", path, e))?;
    parse_model(&path.display().to_string(), &text)
}

/// Parses the text format. Errors carry the 1-based line number.
pub fn parse_model(source_name: &str, text: &str) -> Result<BpeModel> {
    let err = |line: usize, msg: String| Error::parse(source_name, line, msg);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));

    let (_, header) = lines
        .next()
        .ok_or_else(|| err(1, "empty model file".into()))?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.first() != Some(&MODEL_MAGIC) {
        return Err(err(
            1,
            format!("expected header starting with {MODEL_MAGIC}"),
        ));
    }
    if fields.get(1) != Some(&"1") {
        return Err(Error::Version {
            format: MODEL_MAGIC,
            found: fields.get(1).unwrap_or(&"").to_string(),
            expected: MODEL_FORMAT_VERSION,
        });
    }
    if fields.len() != 4 {
        return Err(err(
            1,
            format!("header must have 4 fields, found {}", fields.len()),
        ));
    }
    let mode: EncodeMode = fields[2]
        .parse()
        .map_err(|e: Error| err(1, e.to_string()))?;
    let coverage: f64 = fields[3]
        .parse()
        .map_err(|_| err(1, format!("invalid coverage {:?}", fields[3])))?;

    let mut alphabet = BTreeSet::new();
    let mut merges = Vec::new();
    let mut pieces = Vec::new();
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        let (tag, rest) = line
            .split_once(' ')
            .ok_or_else(|| err(n, format!("malformed record {line:?}")))?;
        match tag {
            "A" => {
                let c = u32::from_str_radix(rest, 16)
                    .ok()
                    .and_then(char::from_u32)
                    .ok_or_else(|| err(n, format!("invalid scalar {rest:?}")))?;
                if !alphabet.insert(c) {
                    return Err(err(n, format!("alphabet scalar {rest} listed twice")));
                }
            }
            "M" => {
                let (left, right) = rest
                    .split_once('\t')
                    .ok_or_else(|| err(n, "merge needs <left>\\t<right>".into()))?;
                if left.is_empty() || right.is_empty() || right.contains('\t') {
                    return Err(err(n, format!("malformed merge {rest:?}")));
                }
                merges.push((left.to_string(), right.to_string()));
            }
            "P" => pieces.push(rest.to_string()),
            other => return Err(err(n, format!("unknown record type {other:?}"))),
        }
    }
    BpeModel::new(alphabet, merges, pieces, coverage, mode).map_err(|e| match e {
        Error::InvalidVocab(msg) => Error::InvalidVocab(format!("{source_name}: {msg}")),
        other => other,
    })
}

/// Reads an externally trained piece list.
pub fn import_external_vocab(path: impl AsRef<Path>) -> Result<BpeModel> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io("vocabulary", path, e))?;
    parse_external_vocab(&text)
}

/// Builds a longest-match model from one piece per line.
///
/// Anything after the first tab (a score column) is ignored, duplicates are
/// dropped, and `<unk>` names the UNK piece. The alphabet is every
/// single-scalar piece plus the boundary marker and UNK, which are added to
/// the pieces if missing.
pub fn parse_external_vocab(text: &str) -> Result<BpeModel> {
    let mut pieces: IndexSet<String> = IndexSet::new();
    for line in text.lines() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let piece = line.split('\t').next().unwrap_or("");
        if piece.is_empty() {
            continue;
        }
        let piece = if piece == EXTERNAL_UNK {
            UNK.to_string()
        } else {
            piece.to_string()
        };
        pieces.insert(piece);
    }
    if pieces.is_empty() {
        return Err(Error::InvalidVocab("vocabulary file has no pieces".into()));
    }
    for special in [WORD_BOUNDARY, UNK] {
        pieces.insert(special.to_string());
    }
    let alphabet: BTreeSet<char> = pieces
        .iter()
        .filter_map(|p| {
            let mut chars = p.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Some(c),
                _ => None,
            }
        })
        .collect();
    BpeModel::new(
        alphabet,
        Vec::new(),
        pieces.into_iter().collect(),
        1.0,
        EncodeMode::LongestMatch,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subword::train_bpe;

    #[test]
    fn round_trip_trained_model() {
        let model = train_bpe("low lower lowest newer wider low low", 30, 1.0).unwrap();
        let text = write_model(&model);
        assert!(text.starts_with("STFIDF-BPE 1 merge-rank 1\n"));
        assert_eq!(parse_model("mem", &text).unwrap(), model);
    }

    #[test]
    fn hand_written_three_piece_file() {
        let text =
            "STFIDF-BPE 1 merge-rank 0.5\nA 61\nA 2581\nA fffd\nP a\nP \u{2581}\nP \u{FFFD}\n";
        let model = parse_model("fixture", text).unwrap();
        assert_eq!(model.num_pieces(), 3);
        assert_eq!(model.coverage(), 0.5);
        assert_eq!(
            model.encode("a ab").pieces(),
            ["▁", "a", "▁", "a", "\u{FFFD}"]
        );
    }

    #[test]
    fn unknown_version_names_expected() {
        let err = parse_model("m", "STFIDF-BPE 7 merge-rank 1\n").unwrap_err();
        assert!(matches!(err, Error::Version { expected: 1, .. }));
        assert!(err.to_string().contains("expected version 1"), "{err}");
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let text = "STFIDF-BPE 1 merge-rank 1\nA 2581\nA zz\n";
        match parse_model("m", text).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_model("m", "STFIDF-BPE 1 merge-rank 1\nX y\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_model("m", "").is_err());
        assert!(parse_model("m", "NOPE 1 merge-rank 1").is_err());
    }

    #[test]
    fn import_ascii_letters_splits_characters() {
        let vocab: String = ('a'..='z')
            .chain('A'..='Z')
            .map(|c| format!("{c}\n"))
            .collect();
        let model = parse_external_vocab(&vocab).unwrap();
        assert_eq!(model.mode(), EncodeMode::LongestMatch);
        assert!(model.merges().is_empty());
        assert_eq!(model.num_pieces(), 52 + 2);
        assert_eq!(
            model.encode("Hi yo").pieces(),
            ["▁", "H", "i", "▁", "y", "o"]
        );
    }

    #[test]
    fn import_ignores_scores_and_duplicates() {
        let model =
            parse_external_vocab("<unk>\t0\n\u{2581}\t0\n\u{2581}the\t-1.5\nthe\t-2\nthe\t-3\n\n")
                .unwrap();
        assert_eq!(model.num_pieces(), 4);
        assert!(model.contains_piece("\u{FFFD}"));
        assert_eq!(
            model.encode("the").pieces(),
            ["▁", "\u{FFFD}", "\u{FFFD}", "\u{FFFD}"]
        );
        let model = parse_external_vocab("\u{2581}the\nt\nh\ne\n").unwrap();
        assert_eq!(
            model.encode("the het").pieces(),
            ["▁the", "▁", "h", "e", "t"]
        );
    }

    #[test]
    fn import_rejects_empty_vocab() {
        assert!(matches!(
            parse_external_vocab("\n\n"),
            Err(Error::InvalidVocab(_))
        ));
    }
}
