//! Entity detection: longest-match gazetteer lookup plus a capitalization
//! heuristic for out-of-gazetteer names. Deliberately simple and pluggable;
//! mentions never overlap and scanning is strictly left to right.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ingest::Sentence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityType {
    Org,
    Person,
    Product,
    Location,
    Other,
}

impl EntityType {
    pub fn as_str(self) -> &'static str {
        match self {
            EntityType::Org => "ORG",
            EntityType::Person => "PERSON",
            EntityType::Product => "PRODUCT",
            EntityType::Location => "LOCATION",
            EntityType::Other => "OTHER",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "ORG" => Some(EntityType::Org),
            "PERSON" => Some(EntityType::Person),
            "PRODUCT" => Some(EntityType::Product),
            "LOCATION" => Some(EntityType::Location),
            "OTHER" => Some(EntityType::Other),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityMention {
    pub surface: String,
    pub entity_type: EntityType,
    pub sentence_index: usize,
}

/// Case-folded phrase -> entity type map (`phrase<TAB>TYPE` per line).
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    map: HashMap<String, EntityType>,
    max_words: usize,
}

impl Gazetteer {
    pub fn parse(content: &str, source_name: &str) -> Result<Self> {
        let mut map = HashMap::new();
        let mut max_words = 0;
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (phrase, tag) = line
                .split_once('\t')
                .ok_or_else(|| Error::format(source_name, idx + 1, "expected 'phrase<TAB>TYPE'"))?;
            let ty = EntityType::parse(tag.trim()).ok_or_else(|| {
                Error::format(source_name, idx + 1, format!("unknown type '{tag}'"))
            })?;
            let key = phrase.trim().to_lowercase();
            max_words = max_words.max(key.split_whitespace().count());
            map.entry(key).or_insert(ty);
        }
        Ok(Gazetteer { map, max_words })
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

    fn lookup_at(&self, lowers: &[&str], start: usize) -> Option<(usize, EntityType)> {
        let limit = self.max_words.min(lowers.len() - start);
        for len in (1..=limit).rev() {
            let key = lowers[start..start + len].join(" ");
            if let Some(&ty) = self.map.get(&key) {
                return Some((len, ty));
            }
        }
        None
    }
}

/// Extract entity mentions: gazetteer hits first (longest match at each
/// position), then maximal capitalized token runs that do not start the
/// sentence, typed OTHER. Stopwords and punctuation never join a
/// capitalized run.
pub fn detect_entities(sentence: &Sentence, gazetteer: &Gazetteer) -> Vec<EntityMention> {
    let tokens = &sentence.tokens;
    let lowers: Vec<&str> = tokens.iter().map(|t| t.lower.as_str()).collect();
    let capitalized: Vec<bool> = tokens
        .iter()
        .map(|t| {
            !t.is_punct
                && !t.is_stopword
                && t.surface.chars().next().is_some_and(char::is_uppercase)
        })
        .collect();

    let mut mentions = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if let Some((len, ty)) = gazetteer.lookup_at(&lowers, i) {
            mentions.push(EntityMention {
                surface: surface_of(sentence, i, len),
                entity_type: ty,
                sentence_index: sentence.global_index,
            });
            i += len;
            continue;
        }
        if i > 0 && capitalized[i] {
            let mut j = i + 1;
            while j < tokens.len() && capitalized[j] && gazetteer.lookup_at(&lowers, j).is_none() {
                j += 1;
            }
            mentions.push(EntityMention {
                surface: surface_of(sentence, i, j - i),
                entity_type: EntityType::Other,
                sentence_index: sentence.global_index,
            });
            i = j;
            continue;
        }
        i += 1;
    }
    mentions
}

fn surface_of(sentence: &Sentence, start: usize, len: usize) -> String {
    sentence.tokens[start..start + len]
        .iter()
        .map(|t| t.surface.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}
