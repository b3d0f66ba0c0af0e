use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use indexmap::IndexSet;

use super::pretokenize::{split_units, UNK, WORD_BOUNDARY};
use crate::{Error, Result, TokenSequence};

/// How [`BpeModel::encode`] segments a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodeMode {
    /// Replay learned merges in training order.
    MergeRank,
    /// Greedily take the longest vocabulary piece at the cursor. Used for
    /// imported vocabularies whose merge order is unknown.
    LongestMatch,
}

impl EncodeMode {
    pub fn name(self) -> &'static str {
        match self {
            EncodeMode::MergeRank => "merge-rank",
            EncodeMode::LongestMatch => "longest-match",
        }
    }
}

impl fmt::Display for EncodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EncodeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "merge-rank" => Ok(EncodeMode::MergeRank),
            "longest-match" => Ok(EncodeMode::LongestMatch),
            other => Err(Error::Config(format!("unknown encode mode {other:?}"))),
        }
    }
}

/// Output of [`BpeModel::encode`]: pieces of the model vocabulary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubwordSequence(Vec<String>);

impl SubwordSequence {
    pub fn pieces(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<String> {
        self.0
    }

    /// Concatenates the pieces and turns boundary markers back into spaces.
    pub fn to_text(&self) -> String {
        let joined: String = self.0.concat();
        let spaced = joined.replace(WORD_BOUNDARY, " ");
        spaced.strip_prefix(' ').unwrap_or(&spaced).to_string()
    }
}

impl From<SubwordSequence> for TokenSequence {
    fn from(seq: SubwordSequence) -> Self {
        TokenSequence::new(seq.0)
    }
}

#[derive(Debug, Clone, Copy)]
struct MergeRule {
    rank: usize,
    result: u32,
}

/// A subword vocabulary: alphabet, ordered merges and the resulting pieces.
#[derive(Debug, Clone)]
pub struct BpeModel {
    alphabet: BTreeSet<char>,
    merges: Vec<(String, String)>,
    pieces: IndexSet<String>,
    coverage: f64,
    mode: EncodeMode,
    // derived from the fields above
    rules: HashMap<(u32, u32), MergeRule>,
    max_piece_chars: usize,
    unk_id: u32,
}

impl PartialEq for BpeModel {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.merges == other.merges
            && self.pieces.iter().eq(other.pieces.iter())
            && self.coverage == other.coverage
            && self.mode == other.mode
    }
}

impl BpeModel {
    /// Builds a model in merge-rank mode: pieces are the alphabet (in code
    /// point order) followed by each merge result.
    pub fn from_merges(
        alphabet: BTreeSet<char>,
        merges: Vec<(String, String)>,
        coverage: f64,
    ) -> Result<Self> {
        let pieces = alphabet
            .iter()
            .map(|c| c.to_string())
            .chain(merges.iter().map(|(l, r)| format!("{l}{r}")))
            .collect();
        Self::new(alphabet, merges, pieces, coverage, EncodeMode::MergeRank)
    }

    /// Builds and validates a model from all of its parts.
    pub fn new(
        alphabet: BTreeSet<char>,
        merges: Vec<(String, String)>,
        pieces: Vec<String>,
        coverage: f64,
        mode: EncodeMode,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidVocab(msg));
        if !(coverage > 0.0 && coverage <= 1.0) {
            return invalid(format!("coverage {coverage} is outside (0, 1]"));
        }
        if !alphabet.contains(&WORD_BOUNDARY) || !alphabet.contains(&UNK) {
            return invalid("alphabet must contain the word-boundary marker and UNK".into());
        }
        let mut piece_set = IndexSet::with_capacity(pieces.len());
        for piece in pieces {
            if piece.is_empty() || piece.contains(['\n', '\r', '\t']) {
                return invalid(format!(
                    "piece {piece:?} is empty or contains a line/tab break"
                ));
            }
            if !piece_set.insert(piece.clone()) {
                return invalid(format!("piece {piece:?} listed twice"));
            }
        }
        for c in &alphabet {
            if !piece_set.contains(c.to_string().as_str()) {
                return invalid(format!(
                    "alphabet scalar U+{:04X} is not a piece",
                    *c as u32
                ));
            }
        }

        // Operands must be formable from the alphabet or earlier merges.
        let mut formed: IndexSet<String> = alphabet.iter().map(|c| c.to_string()).collect();
        for (i, (left, right)) in merges.iter().enumerate() {
            for operand in [left, right] {
                if !formed.contains(operand.as_str()) {
                    return invalid(format!("merge {i} uses {operand:?} before it exists"));
                }
            }
            if !formed.insert(format!("{left}{right}")) {
                return invalid(format!(
                    "merge {i} produces an existing piece {left}{right:?}"
                ));
            }
        }
        if mode == EncodeMode::MergeRank
            && (piece_set.len() != formed.len() || !formed.iter().all(|p| piece_set.contains(p)))
        {
            return invalid(
                "in merge-rank mode the pieces must be exactly the alphabet plus merge results"
                    .into(),
            );
        }

        let id = |s: &str| piece_set.get_index_of(s).map(|i| i as u32);
        let mut rules = HashMap::new();
        if mode == EncodeMode::MergeRank {
            for (rank, (left, right)) in merges.iter().enumerate() {
                let result = id(&format!("{left}{right}")).expect("validated");
                let key = (id(left).expect("validated"), id(right).expect("validated"));
                rules.insert(key, MergeRule { rank, result });
            }
        }
        let unk_id = id(&UNK.to_string()).expect("validated");
        let max_piece_chars = piece_set
            .iter()
            .map(|p| p.chars().count())
            .max()
            .unwrap_or(1);
        Ok(BpeModel {
            alphabet,
            merges,
            pieces: piece_set,
            coverage,
            mode,
            rules,
            max_piece_chars,
            unk_id,
        })
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    pub fn pieces(&self) -> impl ExactSizeIterator<Item = &str> {
        self.pieces.iter().map(String::as_str)
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn contains_piece(&self, piece: &str) -> bool {
        self.pieces.contains(piece)
    }

    pub fn coverage(&self) -> f64 {
        self.coverage
    }

    pub fn mode(&self) -> EncodeMode {
        self.mode
    }

    /// The same model restricted to its first `n` merges.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        match self.mode {
            EncodeMode::MergeRank => BpeModel::from_merges(
                self.alphabet.clone(),
                self.merges[..n.min(self.merges.len())].to_vec(),
                self.coverage,
            ),
            EncodeMode::LongestMatch => Ok(self.clone()),
        }
    }

    /// Segments text into vocabulary pieces.
    ///
    /// Never fails: scalars outside the alphabet become the UNK piece.
    pub fn encode(&self, text: &str) -> SubwordSequence {
        SubwordSequence(self.encode_units(text).into_iter().flatten().collect())
    }

    /// Like [`Self::encode`], but keeps the pieces of each unit apart. Merges
    /// never cross unit boundaries.
    pub fn encode_units(&self, text: &str) -> Vec<Vec<String>> {
        split_units(text)
            .iter()
            .map(|unit| {
                let ids = match self.mode {
                    EncodeMode::MergeRank => self.merge_unit(unit),
                    EncodeMode::LongestMatch => self.longest_match_unit(unit),
                };
                ids.into_iter()
                    .map(|id| self.pieces[id as usize].clone())
                    .collect()
            })
            .collect()
    }

    fn covered(&self, c: char) -> char {
        if self.alphabet.contains(&c) {
            c
        } else {
            UNK
        }
    }

    fn scalar_id(&self, c: char) -> u32 {
        let mut buf = [0u8; 4];
        self.pieces
            .get_index_of(self.covered(c).encode_utf8(&mut buf) as &str)
            .map_or(self.unk_id, |i| i as u32)
    }

    fn merge_unit(&self, unit: &str) -> Vec<u32> {
        let mut ids: Vec<u32> = unit.chars().map(|c| self.scalar_id(c)).collect();
        loop {
            let best = ids
                .windows(2)
                .enumerate()
                .filter_map(|(i, w)| self.rules.get(&(w[0], w[1])).map(|r| (r.rank, i, r.result)))
                .min();
            let Some((_, i, result)) = best else { break };
            ids[i] = result;
            ids.remove(i + 1);
        }
        ids
    }

    fn longest_match_unit(&self, unit: &str) -> Vec<u32> {
        let chars: Vec<char> = unit.chars().map(|c| self.covered(c)).collect();
        let mut out = Vec::new();
        let mut pos = 0;
        let mut candidate = String::new();
        while pos < chars.len() {
            let longest = self.max_piece_chars.min(chars.len() - pos);
            let mut matched = None;
            for len in (1..=longest).rev() {
                candidate.clear();
                candidate.extend(&chars[pos..pos + len]);
                if let Some(i) = self.pieces.get_index_of(candidate.as_str()) {
                    matched = Some((i as u32, len));
                    break;
                }
            }
            let (id, len) = matched.unwrap_or((self.unk_id, 1));
            out.push(id);
            pos += len;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet(chars: &str) -> BTreeSet<char> {
        chars.chars().chain([WORD_BOUNDARY, UNK]).collect()
    }

    fn low_er_model() -> BpeModel {
        let pieces = ["▁low", "er", "▁", "l", "o", "w", "e", "r", "\u{FFFD}"]
            .map(String::from)
            .to_vec();
        BpeModel::new(
            alphabet("lower"),
            vec![],
            pieces,
            1.0,
            EncodeMode::LongestMatch,
        )
        .unwrap()
    }

    #[test]
    fn longest_match_hand_trace() {
        let m = low_er_model();
        assert_eq!(m.encode("lower").pieces(), ["▁low", "er"]);
        assert_eq!(m.encode("lowe").pieces(), ["▁low", "e"]);
        assert_eq!(m.encode("row").pieces(), ["▁", "r", "o", "w"]);
    }

    #[test]
    fn uncovered_scalars_become_unk() {
        let m = low_er_model();
        assert_eq!(m.encode("lox").pieces(), ["▁", "l", "o", "\u{FFFD}"]);
    }

    #[test]
    fn merge_rank_replays_in_order() {
        let merges = vec![
            ("l".to_string(), "o".to_string()),
            ("lo".to_string(), "w".to_string()),
            ("▁".to_string(), "low".to_string()),
            ("e".to_string(), "r".to_string()),
        ];
        let m = BpeModel::from_merges(alphabet("lower"), merges, 1.0).unwrap();
        assert_eq!(m.num_pieces(), alphabet("lower").len() + 4);
        assert_eq!(
            m.encode("lower lowly").pieces(),
            ["▁low", "er", "▁low", "l", "\u{FFFD}"]
        );
        let first_two = m.truncated(2).unwrap();
        assert_eq!(first_two.encode("lower").pieces(), ["▁", "low", "e", "r"]);
    }

    #[test]
    fn equal_pairs_merge_left_to_right() {
        let merges = vec![("a".to_string(), "a".to_string())];
        let m = BpeModel::from_merges(alphabet("a"), merges, 1.0).unwrap();
        assert_eq!(m.encode("aaa").pieces(), ["▁", "aa", "a"]);
    }

    #[test]
    fn rejects_invalid_parts() {
        let bad_operand = vec![("ab".to_string(), "c".to_string())];
        assert!(BpeModel::from_merges(alphabet("abc"), bad_operand, 1.0).is_err());
        let dup = vec![
            ("a".to_string(), "b".to_string()),
            ("a".to_string(), "b".to_string()),
        ];
        assert!(BpeModel::from_merges(alphabet("ab"), dup, 1.0).is_err());
        assert!(BpeModel::from_merges(alphabet("ab"), vec![], 0.0).is_err());
        let no_marker: BTreeSet<char> = ['a', UNK].into();
        assert!(BpeModel::from_merges(no_marker, vec![], 1.0).is_err());
    }

    #[test]
    fn to_text_restores_spacing() {
        let m = low_er_model();
        assert_eq!(m.encode("  low  lower ").to_text(), "low lower");
    }
}
