//! Lexicon data files: deverbal nouns, discourse markers, coarse POS tags,
//! and the suffix lemmatizer that binds inflected forms to lexicon entries.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ingest::Token;

/// Coarse part-of-speech classes used by the word graph and keyphrase
/// extraction. Words missing from the lexicon default to `Noun`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoarsePos {
    Verb,
    Noun,
    Adj,
    Other,
    Punct,
}

impl CoarsePos {
    pub fn as_str(self) -> &'static str {
        match self {
            CoarsePos::Verb => "VERB",
            CoarsePos::Noun => "NOUN",
            CoarsePos::Adj => "ADJ",
            CoarsePos::Other => "OTHER",
            CoarsePos::Punct => "PUNCT",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "VERB" => Some(CoarsePos::Verb),
            "NOUN" => Some(CoarsePos::Noun),
            "ADJ" => Some(CoarsePos::Adj),
            "OTHER" => Some(CoarsePos::Other),
            "PUNCT" => Some(CoarsePos::Punct),
            _ => None,
        }
    }
}

/// Lines of a UTF-8 list file, trimmed, skipping blanks and `#` comments.
pub fn parse_lines(content: &str) -> Vec<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

pub fn load_word_set(path: &Path) -> Result<HashSet<String>> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_word_set(&content))
}

pub fn parse_word_set(content: &str) -> HashSet<String> {
    parse_lines(content)
        .into_iter()
        .map(|w| w.to_lowercase())
        .collect()
}

// ---------------------------------------------------------------------------
// Deverbal lexicon
// ---------------------------------------------------------------------------

/// Maps verb lemmas to their noun forms ("destroy" -> {"destruction"}).
/// File format: one `verb<TAB>noun,noun` record per line.
#[derive(Debug, Clone, Default)]
pub struct DeverbalLexicon {
    entries: HashMap<String, Vec<String>>,
}

impl DeverbalLexicon {
    pub fn parse(content: &str, source_name: &str) -> Result<Self> {
        let mut entries = HashMap::new();
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (verb, nouns) = line.split_once('\t').ok_or_else(|| {
                Error::format(source_name, idx + 1, "expected 'verb<TAB>noun,...'")
            })?;
            let nouns: Vec<String> = nouns
                .split(',')
                .map(str::trim)
                .filter(|n| !n.is_empty())
                .map(|n| n.to_lowercase())
                .collect();
            if nouns.is_empty() {
                return Err(Error::format(source_name, idx + 1, "empty noun set"));
            }
            entries.entry(verb.trim().to_lowercase()).or_insert(nouns);
        }
        Ok(DeverbalLexicon { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&content, &path.display().to_string())
    }

    pub fn nouns(&self, verb_lemma: &str) -> Option<&[String]> {
        self.entries.get(verb_lemma).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

// ---------------------------------------------------------------------------
// Discourse markers
// ---------------------------------------------------------------------------

/// Ordered list of lowercase discourse markers; multi-word markers match the
/// leading tokens of a sentence as a prefix.
#[derive(Debug, Clone)]
pub struct MarkerList {
    markers: Vec<Vec<String>>,
}

impl MarkerList {
    pub fn parse(content: &str) -> Self {
        let markers = parse_lines(content)
            .into_iter()
            .map(|m| {
                m.to_lowercase()
                    .split_whitespace()
                    .map(str::to_string)
                    .collect()
            })
            .collect();
        MarkerList { markers }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&content))
    }

    pub fn len(&self) -> usize {
        self.markers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    /// True when the sentence's first non-punctuation tokens spell out one of
    /// the markers.
    pub fn matches_sentence_start(&self, tokens: &[Token]) -> bool {
        let words: Vec<&str> = tokens
            .iter()
            .skip_while(|t| t.is_punct)
            .map(|t| t.lower.as_str())
            .collect();
        self.markers.iter().any(|marker| {
            marker.len() <= words.len() && marker.iter().zip(&words).all(|(m, w)| m == w)
        })
    }
}

// ---------------------------------------------------------------------------
// Coarse POS lexicon + lemmatizer
// ---------------------------------------------------------------------------

/// Word -> coarse POS map from the shipped lexicon file
/// (`word<TAB>VERB|NOUN|ADJ|OTHER` per line).
#[derive(Debug, Clone, Default)]
pub struct PosLexicon {
    map: HashMap<String, CoarsePos>,
}

impl PosLexicon {
    pub fn parse(content: &str, source_name: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) = line
                .split_once('\t')
                .ok_or_else(|| Error::format(source_name, idx + 1, "expected 'word<TAB>TAG'"))?;
            let pos = CoarsePos::parse(tag.trim()).ok_or_else(|| {
                Error::format(source_name, idx + 1, format!("unknown tag '{tag}'"))
            })?;
            map.entry(word.trim().to_lowercase()).or_insert(pos);
        }
        Ok(PosLexicon { map })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&content, &path.display().to_string())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn lookup(&self, lower: &str) -> Option<CoarsePos> {
        self.map.get(lower).copied()
    }

    /// Tag a token: punctuation structurally, then direct lookup, then lookup
    /// of a suffix-stripped lemma, then the `Noun` default.
    pub fn tag_token(&self, token: &Token) -> CoarsePos {
        if token.is_punct {
            return CoarsePos::Punct;
        }
        self.tag_word(&token.lower)
    }

    pub fn tag_word(&self, lower: &str) -> CoarsePos {
        if let Some(pos) = self.lookup(lower) {
            return pos;
        }
        for candidate in lemma_candidates(lower) {
            if let Some(pos) = self.lookup(&candidate) {
                return pos;
            }
        }
        CoarsePos::Noun
    }

    /// Resolve a token to a verb lemma: the base form found in the lexicon
    /// with a `VERB` tag, or `None` when the token is not a verb.
    pub fn verb_lemma(&self, lower: &str) -> Option<String> {
        if self.lookup(lower) == Some(CoarsePos::Verb) {
            return Some(lower.to_string());
        }
        if self.lookup(lower).is_some() {
            return None; // known, but not a verb
        }
        lemma_candidates(lower)
            .into_iter()
            .find(|c| self.lookup(c) == Some(CoarsePos::Verb))
    }
}

/// Candidate base forms for an inflected word, by suffix stripping with
/// consonant-doubling and silent-e restoration. Ordered from most to least
/// specific; callers take the first candidate their lexicon knows.
pub fn lemma_candidates(word: &str) -> Vec<String> {
    let mut out = Vec::new();
    let n = word.len();
    let mut push = |s: String| {
        if !s.is_empty() && !out.contains(&s) {
            out.push(s);
        }
    };

    if n > 3 {
        if let Some(stem) = word.strip_suffix("ies") {
            push(format!("{stem}y"));
        }
        if let Some(stem) = word.strip_suffix("ied") {
            push(format!("{stem}y"));
        }
    }
    if n > 2 {
        if let Some(stem) = word.strip_suffix("es") {
            push(stem.to_string());
        }
        if !word.ends_with("ss") {
            if let Some(stem) = word.strip_suffix('s') {
                push(stem.to_string());
            }
        }
    }
    if n > 3 {
        if let Some(stem) = word.strip_suffix("ed") {
            push(stem.to_string());
            push(undouble(stem));
            push(format!("{stem}e"));
        }
    }
    if n > 4 {
        if let Some(stem) = word.strip_suffix("ing") {
            push(stem.to_string());
            push(undouble(stem));
            push(format!("{stem}e"));
        }
    }
    out
}

fn undouble(stem: &str) -> String {
    let chars: Vec<char> = stem.chars().collect();
    let n = chars.len();
    if n >= 2 && chars[n - 1] == chars[n - 2] && !"aeiou".contains(chars[n - 1]) {
        chars[..n - 1].iter().collect()
    } else {
        stem.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::test_ingestor;

    fn pos_fixture() -> PosLexicon {
        PosLexicon::parse(
            "arrest\tVERB\nrun\tVERB\nhope\tVERB\nstudy\tVERB\nsaid\tVERB\nbig\tADJ\nthe\tOTHER\nstorm\tNOUN\n",
            "fixture",
        )
        .unwrap()
    }

    #[test]
    fn deverbal_parses_and_looks_up() {
        let lex = DeverbalLexicon::parse("destroy\tdestruction\nvote\tvote,voting\n", "f").unwrap();
        assert_eq!(
            lex.nouns("destroy"),
            Some(["destruction".to_string()].as_slice())
        );
        assert_eq!(lex.nouns("vote").unwrap().len(), 2);
        assert_eq!(lex.nouns("sing"), None);
    }

    #[test]
    fn deverbal_rejects_empty_noun_set() {
        assert!(DeverbalLexicon::parse("destroy\t\n", "f").is_err());
    }

    #[test]
    fn markers_match_first_token() {
        let markers = MarkerList::parse("however\nin addition\n");
        let ing = test_ingestor();
        assert!(markers.matches_sentence_start(&ing.tokenize("However, it failed.")));
        assert!(markers.matches_sentence_start(&ing.tokenize("\"However\" they said")));
        assert!(markers.matches_sentence_start(&ing.tokenize("In addition, more.")));
        assert!(!markers.matches_sentence_start(&ing.tokenize("The cat sat.")));
        assert!(!markers.matches_sentence_start(&ing.tokenize("In the park.")));
    }

    #[test]
    fn pos_tagging_with_lemma_fallback() {
        let pos = pos_fixture();
        let ing = test_ingestor();
        let tag = |s: &str| pos.tag_token(&ing.tokenize(s)[0]);
        assert_eq!(tag("arrested"), CoarsePos::Verb);
        assert_eq!(tag("running"), CoarsePos::Verb);
        assert_eq!(tag("hoped"), CoarsePos::Verb);
        assert_eq!(tag("studies"), CoarsePos::Verb);
        assert_eq!(tag("big"), CoarsePos::Adj);
        assert_eq!(tag("the"), CoarsePos::Other);
        assert_eq!(tag(","), CoarsePos::Punct);
        assert_eq!(tag("zebra"), CoarsePos::Noun); // unknown defaults to NOUN
    }

    #[test]
    fn verb_lemma_resolves_base_form() {
        let pos = pos_fixture();
        assert_eq!(pos.verb_lemma("arrested"), Some("arrest".to_string()));
        assert_eq!(pos.verb_lemma("studied"), Some("study".to_string()));
        assert_eq!(pos.verb_lemma("said"), Some("said".to_string()));
        assert_eq!(pos.verb_lemma("big"), None);
        assert_eq!(pos.verb_lemma("zebra"), None);
    }

    #[test]
    fn lemma_candidates_handle_doubling_and_silent_e() {
        assert!(lemma_candidates("running").contains(&"run".to_string()));
        assert!(lemma_candidates("hoping").contains(&"hope".to_string()));
        assert!(lemma_candidates("stopped").contains(&"stop".to_string()));
        assert!(lemma_candidates("carries").contains(&"carry".to_string()));
        assert!(lemma_candidates("watches").contains(&"watch".to_string()));
    }
}
