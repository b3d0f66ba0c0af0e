//! The original Porter (1980) suffix-stripping stemmer.
//!
//! This follows the published rule tables, not the later "Porter2" revision
//! and without the two departures found in some C distributions (`bli`/`ble`
//! and `logi`/`log` in step 2).

/// Stems a lowercase ASCII word.
///
/// Input containing anything other than `a`-`z` is returned unchanged, as are
/// words of one or two letters.
pub fn porter_stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut stemmer = Stemmer::new(word);
    stemmer.step1ab();
    if stemmer.end > 0 {
        stemmer.step1c();
        stemmer.step2();
        stemmer.step3();
        stemmer.step4();
        stemmer.step5();
    }
    stemmer.finish()
}

/// Working buffer. `end` is the index of the last letter of the current
/// word, `stem` the length of the stem left in front of the suffix matched by
/// the last successful [`Stemmer::ends`] call.
struct Stemmer {
    b: Vec<u8>,
    end: usize,
    stem: usize,
}

impl Stemmer {
    fn new(word: &str) -> Self {
        let b = word.as_bytes().to_vec();
        let end = b.len() - 1;
        Stemmer { b, end, stem: 0 }
    }

    fn finish(mut self) -> String {
        self.b.truncate(self.end + 1);
        String::from_utf8(self.b).expect("ascii")
    }

    fn is_consonant(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// Number of VC sequences in `b[..stem_len]`, the `m` of `[C](VC)^m[V]`.
    fn measure(&self, stem_len: usize) -> usize {
        let mut n = 0;
        let mut i = 0;
        while i < stem_len && self.is_consonant(i) {
            i += 1;
        }
        loop {
            while i < stem_len && !self.is_consonant(i) {
                i += 1;
            }
            if i >= stem_len {
                return n;
            }
            while i < stem_len && self.is_consonant(i) {
                i += 1;
            }
            n += 1;
        }
    }

    fn m(&self) -> usize {
        self.measure(self.stem)
    }

    fn vowel_in_stem(&self) -> bool {
        (0..self.stem).any(|i| !self.is_consonant(i))
    }

    /// `*d`: the word ends in a double consonant at index `j`.
    fn double_consonant(&self, j: usize) -> bool {
        j >= 1 && self.b[j] == self.b[j - 1] && self.is_consonant(j)
    }

    /// `*o`: consonant-vowel-consonant ending at `i`, last not w, x or y.
    fn cvc(&self, i: usize) -> bool {
        if i < 2 || !self.is_consonant(i) || self.is_consonant(i - 1) || !self.is_consonant(i - 2) {
            return false;
        }
        !matches!(self.b[i], b'w' | b'x' | b'y')
    }

    /// Tests whether the current word ends with `suffix`; on success records
    /// the stem length in `self.stem`.
    fn ends(&mut self, suffix: &str) -> bool {
        let s = suffix.as_bytes();
        let len = self.end + 1;
        if s.len() > len || &self.b[len - s.len()..len] != s {
            return false;
        }
        self.stem = len - s.len();
        true
    }

    /// Replaces the matched suffix with `replacement`.
    fn set_to(&mut self, replacement: &str) {
        self.b.truncate(self.stem);
        self.b.extend_from_slice(replacement.as_bytes());
        self.end = self.b.len() - 1;
    }

    /// Replaces the matched suffix when the stem measure is positive.
    fn replace_if_measure(&mut self, replacement: &str) {
        if self.m() > 0 {
            self.set_to(replacement);
        }
    }

    fn step1ab(&mut self) {
        if self.b[self.end] == b's' {
            if self.ends("sses") {
                self.set_to("ss");
            } else if self.ends("ies") {
                self.set_to("i");
            } else if self.end >= 1 && self.b[self.end - 1] != b's' {
                self.end -= 1;
                self.b.truncate(self.end + 1);
            }
        }
        if self.ends("eed") {
            if self.m() > 0 {
                self.end -= 1;
                self.b.truncate(self.end + 1);
            }
        } else if (self.ends("ed") || self.ends("ing")) && self.vowel_in_stem() {
            self.b.truncate(self.stem);
            self.end = self.stem - 1;
            if self.ends("at") {
                self.set_to("ate");
            } else if self.ends("bl") {
                self.set_to("ble");
            } else if self.ends("iz") {
                self.set_to("ize");
            } else if self.double_consonant(self.end) {
                if !matches!(self.b[self.end], b'l' | b's' | b'z') {
                    self.end -= 1;
                    self.b.truncate(self.end + 1);
                }
            } else {
                self.stem = self.end + 1;
                if self.m() == 1 && self.cvc(self.end) {
                    self.set_to("e");
                }
            }
        }
    }

    fn step1c(&mut self) {
        if self.ends("y") && self.vowel_in_stem() {
            self.b[self.end] = b'i';
        }
    }

    fn step2(&mut self) {
        if self.end < 1 {
            return;
        }
        const RULES: &[(&str, &str)] = &[
            ("ational", "ate"),
            ("tional", "tion"),
            ("enci", "ence"),
            ("anci", "ance"),
            ("izer", "ize"),
            ("abli", "able"),
            ("alli", "al"),
            ("entli", "ent"),
            ("eli", "e"),
            ("ousli", "ous"),
            ("ization", "ize"),
            ("ation", "ate"),
            ("ator", "ate"),
            ("alism", "al"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
            ("aliti", "al"),
            ("iviti", "ive"),
            ("biliti", "ble"),
        ];
        self.apply_longest(RULES);
    }

    fn step3(&mut self) {
        const RULES: &[(&str, &str)] = &[
            ("icate", "ic"),
            ("ative", ""),
            ("alize", "al"),
            ("iciti", "ic"),
            ("ical", "ic"),
            ("ful", ""),
            ("ness", ""),
        ];
        self.apply_longest(RULES);
    }

    /// Finds the longest suffix in `rules` and rewrites it when `m > 0`.
    /// Shorter suffixes are not tried once a longer one matched.
    fn apply_longest(&mut self, rules: &[(&str, &str)]) {
        let best = rules
            .iter()
            .filter(|(suffix, _)| self.ends(suffix))
            .max_by_key(|(suffix, _)| suffix.len());
        if let Some((suffix, replacement)) = best {
            self.ends(suffix);
            self.replace_if_measure(replacement);
        }
    }

    fn step4(&mut self) {
        const SUFFIXES: &[&str] = &[
            "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment", "ent", "ion",
            "ou", "ism", "ate", "iti", "ous", "ive", "ize",
        ];
        let best = SUFFIXES
            .iter()
            .filter(|suffix| self.ends(suffix))
            .max_by_key(|suffix| suffix.len());
        let Some(suffix) = best else { return };
        self.ends(suffix);
        if *suffix == "ion" {
            let ok = self.stem >= 1 && matches!(self.b[self.stem - 1], b's' | b't');
            if !ok {
                return;
            }
        }
        if self.m() > 1 {
            self.set_to("");
        }
    }

    fn step5(&mut self) {
        // 5a
        self.stem = self.end;
        if self.end >= 1 && self.b[self.end] == b'e' {
            let m = self.m();
            if m > 1 || (m == 1 && !self.cvc(self.end - 1)) {
                self.end -= 1;
                self.b.truncate(self.end + 1);
            }
        }
        // 5b
        self.stem = self.end + 1;
        if self.b[self.end] == b'l' && self.double_consonant(self.end) && self.m() > 1 {
            self.end -= 1;
            self.b.truncate(self.end + 1);
        }
    }
}
