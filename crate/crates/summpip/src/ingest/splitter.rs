//! Rule-based sentence boundary detection.
//!
//! A terminator (`.`, `!`, `?`) ends a sentence unless the period sits inside
//! a known abbreviation, an initial/acronym (`J.`, `U.S.`), or a number. The
//! abbreviation list is a data file, not code, so it can grow without a
//! rebuild. Newlines always end a sentence.

use std::collections::HashSet;

#[derive(Debug, Clone)]
pub struct SentenceSplitter {
    /// Lowercased abbreviations including their trailing period ("mr.").
    abbreviations: HashSet<String>,
}

const CLOSERS: [char; 6] = ['"', '\'', ')', ']', '\u{201d}', '\u{2019}'];

impl SentenceSplitter {
    pub fn new(abbreviations: HashSet<String>) -> Self {
        SentenceSplitter { abbreviations }
    }

    pub fn split(&self, text: &str) -> Vec<String> {
        let chars: Vec<char> = text.chars().collect();
        let mut sentences = Vec::new();
        let mut start = 0;
        let mut i = 0;

        let flush = |sentences: &mut Vec<String>, from: usize, to: usize| {
            if from < to {
                let s: String = chars[from..to].iter().collect();
                let s = s.trim();
                if !s.is_empty() {
                    sentences.push(s.to_string());
                }
            }
        };

        while i < chars.len() {
            let c = chars[i];
            if c == '\n' || c == '\r' {
                flush(&mut sentences, start, i);
                i += 1;
                start = i;
                continue;
            }
            if c == '.' || c == '!' || c == '?' {
                // Swallow terminator runs like "?!" and "...".
                let mut end = i;
                while end + 1 < chars.len() && matches!(chars[end + 1], '.' | '!' | '?') {
                    end += 1;
                }
                let lone_period = end == i && c == '.';
                let exempt = lone_period && self.period_is_exempt(&chars, i);
                if !exempt {
                    let mut close = end;
                    while close + 1 < chars.len() && CLOSERS.contains(&chars[close + 1]) {
                        close += 1;
                    }
                    // Boundaries require following whitespace (or end of
                    // text); this keeps decimals and bare domains intact.
                    let followed_by_space = chars.get(close + 1).is_none_or(|c| c.is_whitespace());
                    if followed_by_space {
                        flush(&mut sentences, start, close + 1);
                        i = close + 1;
                        start = i;
                        continue;
                    }
                }
                i = end + 1;
                continue;
            }
            i += 1;
        }
        flush(&mut sentences, start, chars.len());
        sentences
    }

    /// True when the period at `idx` belongs to an abbreviation, an
    /// initial/acronym, or similar non-terminal use.
    fn period_is_exempt(&self, chars: &[char], idx: usize) -> bool {
        // Word = characters back to the previous whitespace, dot included.
        let mut begin = idx;
        while begin > 0 && !chars[begin - 1].is_whitespace() {
            begin -= 1;
        }
        // Drop leading quotes/brackets so ("Mr. matches the list entry.
        while begin < idx && !chars[begin].is_alphanumeric() {
            begin += 1;
        }
        if begin >= idx {
            return false; // bare punctuation run
        }
        let word: String = chars[begin..=idx].iter().collect();
        let lowered = word.to_lowercase();
        if self.abbreviations.contains(&lowered) {
            return true;
        }
        is_acronym(&chars[begin..=idx])
    }
}

/// Alternating letter/period sequences: "J.", "U.S.", "U.S.A.".
fn is_acronym(chars: &[char]) -> bool {
    if chars.len() < 2 || !chars.len().is_multiple_of(2) {
        return false;
    }
    chars
        .chunks(2)
        .all(|pair| pair[0].is_alphabetic() && pair[1] == '.')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn splitter() -> SentenceSplitter {
        let abbr = ["mr.", "mrs.", "dr.", "etc.", "e.g.", "u.s.", "jan."]
            .iter()
            .map(|s| s.to_string())
            .collect();
        SentenceSplitter::new(abbr)
    }

    fn normalize_ws(s: &str) -> String {
        s.split_whitespace().collect::<Vec<_>>().join(" ")
    }

    #[test]
    fn two_plain_sentences() {
        assert_eq!(splitter().split("A cat. A dog."), vec!["A cat.", "A dog."]);
    }

    #[test]
    fn abbreviation_does_not_split() {
        assert_eq!(
            splitter().split("Mr. Smith left. He ran."),
            vec!["Mr. Smith left.", "He ran."]
        );
    }

    #[test]
    fn empty_input_gives_empty_list() {
        assert!(splitter().split("").is_empty());
        assert!(splitter().split("   \n  ").is_empty());
    }

    #[test]
    fn question_and_exclamation_terminate() {
        assert_eq!(
            splitter().split("Really? Yes! Fine."),
            vec!["Really?", "Yes!", "Fine."]
        );
    }

    #[test]
    fn initials_and_acronyms_do_not_split() {
        assert_eq!(
            splitter().split("J. Smith met U.S. officials. They spoke."),
            vec!["J. Smith met U.S. officials.", "They spoke."]
        );
    }

    #[test]
    fn decimal_numbers_do_not_split() {
        assert_eq!(
            splitter().split("It grew 3.5 percent. Prices fell."),
            vec!["It grew 3.5 percent.", "Prices fell."]
        );
    }

    #[test]
    fn closing_quote_stays_with_sentence() {
        assert_eq!(
            splitter().split("He said \"stop.\" She left."),
            vec!["He said \"stop.\"", "She left."]
        );
    }

    #[test]
    fn newline_is_a_boundary() {
        assert_eq!(
            splitter().split("headline\nBody text."),
            vec!["headline", "Body text."]
        );
    }

    #[test]
    fn rejoining_preserves_non_whitespace() {
        let inputs = [
            "Mr. Smith left. He ran.",
            "One. Two! Three? Four\nFive, e.g. six.",
            "U.S. stocks rose 1.2 percent... then fell.",
        ];
        for input in inputs {
            let joined = splitter().split(input).join(" ");
            assert_eq!(normalize_ws(&joined), normalize_ws(input), "input: {input}");
        }
    }
}
