//! Porter stemmer (the classic five-step suffix-stripping algorithm).
//!
//! Operates on lowercase ASCII; anything else passes through unchanged.
//! Words of length <= 2 are never stemmed.

pub fn porter_stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = Stemmer {
        b: word.as_bytes().to_vec(),
    };
    w.step1a();
    w.step1b();
    w.step1c();
    w.step2();
    w.step3();
    w.step4();
    w.step5a();
    w.step5b();
    String::from_utf8(w.b).expect("ascii stays ascii")
}

struct Stemmer {
    b: Vec<u8>,
}

impl Stemmer {
    fn len(&self) -> usize {
        self.b.len()
    }

    fn is_consonant(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// The measure m of the prefix `b[..len]`: the number of VC blocks in
    /// the form [C](VC)^m[V].
    fn measure(&self, len: usize) -> usize {
        let mut m = 0;
        for i in 1..len {
            if self.is_consonant(i) && !self.is_consonant(i - 1) {
                m += 1;
            }
        }
        m
    }

    fn has_vowel(&self, len: usize) -> bool {
        (0..len).any(|i| !self.is_consonant(i))
    }

    fn ends_double_consonant(&self, len: usize) -> bool {
        len >= 2 && self.b[len - 1] == self.b[len - 2] && self.is_consonant(len - 1)
    }

    /// consonant-vowel-consonant ending where the final consonant is not
    /// w, x, or y.
    fn ends_cvc(&self, len: usize) -> bool {
        len >= 3
            && self.is_consonant(len - 3)
            && !self.is_consonant(len - 2)
            && self.is_consonant(len - 1)
            && !matches!(self.b[len - 1], b'w' | b'x' | b'y')
    }

    /// Stem length when the word ends with `suffix`, else None.
    fn ends(&self, suffix: &str) -> Option<usize> {
        let s = suffix.as_bytes();
        if self.len() > s.len() && self.b.ends_with(s) {
            Some(self.len() - s.len())
        } else {
            None
        }
    }

    fn replace(&mut self, stem: usize, with: &str) {
        self.b.truncate(stem);
        self.b.extend_from_slice(with.as_bytes());
    }

    fn step1a(&mut self) {
        if self.ends("sses").is_some() || self.ends("ies").is_some() {
            self.b.truncate(self.len() - 2);
        } else if self.ends("ss").is_none() && self.ends("s").is_some() {
            self.b.pop();
        }
    }

    fn step1b(&mut self) {
        if let Some(stem) = self.ends("eed") {
            if self.measure(stem) > 0 {
                self.b.pop();
            }
            return;
        }
        let mut stripped = false;
        if let Some(stem) = self.ends("ed") {
            if self.has_vowel(stem) {
                self.b.truncate(stem);
                stripped = true;
            }
        } else if let Some(stem) = self.ends("ing") {
            if self.has_vowel(stem) {
                self.b.truncate(stem);
                stripped = true;
            }
        }
        if !stripped {
            return;
        }
        let len = self.len();
        if self.ends("at").is_some() || self.ends("bl").is_some() || self.ends("iz").is_some() {
            self.b.push(b'e');
        } else if self.ends_double_consonant(len) && !matches!(self.b[len - 1], b'l' | b's' | b'z')
        {
            self.b.pop();
        } else if self.measure(len) == 1 && self.ends_cvc(len) {
            self.b.push(b'e');
        }
    }

    fn step1c(&mut self) {
        if let Some(stem) = self.ends("y") {
            if self.has_vowel(stem) {
                let last = self.len() - 1;
                self.b[last] = b'i';
            }
        }
    }

    /// Longest matching suffix is selected; its condition then decides
    /// whether the replacement happens. Either way, no further rules apply.
    fn map_suffixes(&mut self, rules: &[(&str, &str)], min_measure: usize) {
        for &(suffix, with) in rules {
            if let Some(stem) = self.ends(suffix) {
                if self.measure(stem) > min_measure {
                    self.replace(stem, with);
                }
                return;
            }
        }
    }

    fn step2(&mut self) {
        // Ordered longest-first so e.g. "ization" wins over "ation".
        const RULES: [(&str, &str); 21] = [
            ("ational", "ate"),
            ("ization", "ize"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
            ("tional", "tion"),
            ("biliti", "ble"),
            ("entli", "ent"),
            ("ousli", "ous"),
            ("aliti", "al"),
            ("iviti", "ive"),
            ("ation", "ate"),
            ("alism", "al"),
            ("enci", "ence"),
            ("anci", "ance"),
            ("izer", "ize"),
            ("abli", "able"),
            ("alli", "al"),
            ("ator", "ate"),
            ("logi", "log"),
            ("eli", "e"),
        ];
        self.map_suffixes(&RULES, 0);
    }

    fn step3(&mut self) {
        const RULES: [(&str, &str); 7] = [
            ("icate", "ic"),
            ("ative", ""),
            ("alize", "al"),
            ("iciti", "ic"),
            ("ical", "ic"),
            ("ness", ""),
            ("ful", ""),
        ];
        self.map_suffixes(&RULES, 0);
    }

    fn step4(&mut self) {
        const SUFFIXES: [&str; 19] = [
            "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion", "ism", "ate",
            "iti", "ous", "ive", "ize", "al", "er", "ic", "ou",
        ];
        for suffix in SUFFIXES {
            if let Some(stem) = self.ends(suffix) {
                let ion_ok = suffix != "ion" || matches!(self.b[stem - 1], b's' | b't');
                if self.measure(stem) > 1 && ion_ok {
                    self.b.truncate(stem);
                }
                return;
            }
        }
    }

    fn step5a(&mut self) {
        if let Some(stem) = self.ends("e") {
            let m = self.measure(stem);
            if m > 1 || (m == 1 && !self.ends_cvc(stem)) {
                self.b.pop();
            }
        }
    }

    fn step5b(&mut self) {
        let len = self.len();
        if self.measure(len) > 1 && self.ends_double_consonant(len) && self.b[len - 1] == b'l' {
            self.b.pop();
        }
    }
}
