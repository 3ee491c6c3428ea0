//! Whitespace-and-punctuation tokenizer.
//!
//! Splits on whitespace, then peels leading/trailing punctuation into their
//! own tokens. Internal punctuation (hyphens, apostrophes, decimal points)
//! stays inside the token, as do trailing periods of abbreviations and
//! acronyms ("U.S.", "etc."), so sentence-splitter and tokenizer agree on
//! what a dotted token is.

use std::collections::HashSet;

use super::Token;

pub fn tokenize(
    text: &str,
    stopwords: &HashSet<String>,
    abbreviations: &HashSet<String>,
) -> Vec<Token> {
    let mut tokens = Vec::new();
    for raw in text.split_whitespace() {
        let chars: Vec<char> = raw.chars().collect();
        let mut start = 0;
        let mut end = chars.len();

        while start < end && !chars[start].is_alphanumeric() {
            tokens.push(Token::new(chars[start].to_string(), stopwords));
            start += 1;
        }

        let mut trailing = Vec::new();
        while end > start && !chars[end - 1].is_alphanumeric() {
            if chars[end - 1] == '.' && keeps_trailing_period(&chars[start..end], abbreviations) {
                break;
            }
            trailing.push(chars[end - 1]);
            end -= 1;
        }

        if start < end {
            let core: String = chars[start..end].iter().collect();
            tokens.push(Token::new(core, stopwords));
        }
        for &c in trailing.iter().rev() {
            tokens.push(Token::new(c.to_string(), stopwords));
        }
    }
    tokens
}

fn keeps_trailing_period(core: &[char], abbreviations: &HashSet<String>) -> bool {
    let word: String = core.iter().collect::<String>().to_lowercase();
    if abbreviations.contains(&word) {
        return true;
    }
    // Acronyms/initials: alternating letter-period pairs.
    core.len() >= 2
        && core.len().is_multiple_of(2)
        && core.chunks(2).all(|p| p[0].is_alphabetic() && p[1] == '.')
}
