//! Lexical and embedding knowledge used by the graph builder and compressor:
//! word vectors, deverbal-noun lexicon, discourse markers, coarse POS tags,
//! stopwords, abbreviations, and the entity gazetteer.
//!
//! Every resource is immutable after load; a single [`Resources`] value is
//! shared read-only across worker threads. Default data files are compiled
//! into the crate and can be overridden per path.

mod entities;
mod lexicons;
mod vectors;

use std::collections::{BTreeSet, HashSet};

use crate::config::ResourcePaths;
use crate::error::Result;

pub use entities::{detect_entities, EntityMention, EntityType, Gazetteer};
pub use lexicons::{
    lemma_candidates, load_word_set, parse_word_set, CoarsePos, DeverbalLexicon, MarkerList,
    PosLexicon,
};
pub use vectors::{cosine, WordVectorStore};

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");
const DEFAULT_ABBREVIATIONS: &str = include_str!("../../data/abbreviations.txt");
const DEFAULT_MARKERS: &str = include_str!("../../data/markers.txt");
const DEFAULT_DEVERBAL: &str = include_str!("../../data/deverbal.tsv");
const DEFAULT_GAZETTEER: &str = include_str!("../../data/gazetteer.tsv");
const DEFAULT_POS_LEXICON: &str = include_str!("../../data/pos_lexicon.tsv");

#[derive(Debug, Clone)]
pub struct Resources {
    pub vectors: WordVectorStore,
    pub stopwords: HashSet<String>,
    pub abbreviations: HashSet<String>,
    pub markers: MarkerList,
    pub deverbal: DeverbalLexicon,
    pub gazetteer: Gazetteer,
    pub pos: PosLexicon,
}

impl Resources {
    /// The compiled-in data files and an empty vector store.
    pub fn builtin() -> Self {
        Resources {
            vectors: WordVectorStore::empty(),
            stopwords: parse_word_set(DEFAULT_STOPWORDS),
            abbreviations: parse_word_set(DEFAULT_ABBREVIATIONS),
            markers: MarkerList::parse(DEFAULT_MARKERS),
            deverbal: DeverbalLexicon::parse(DEFAULT_DEVERBAL, "builtin:deverbal.tsv")
                .expect("builtin deverbal lexicon is well-formed"),
            gazetteer: Gazetteer::parse(DEFAULT_GAZETTEER, "builtin:gazetteer.tsv")
                .expect("builtin gazetteer is well-formed"),
            pos: PosLexicon::parse(DEFAULT_POS_LEXICON, "builtin:pos_lexicon.tsv")
                .expect("builtin pos lexicon is well-formed"),
        }
    }

    /// Builtin data with per-file overrides. Fails fast on any unreadable or
    /// malformed file so batch runs never start with partial resources.
    pub fn load(paths: &ResourcePaths) -> Result<Self> {
        let mut res = Resources::builtin();
        if let Some(p) = &paths.vectors {
            res.vectors = WordVectorStore::load(p)?;
        }
        if let Some(p) = &paths.stopwords {
            res.stopwords = load_word_set(p)?;
        }
        if let Some(p) = &paths.abbreviations {
            res.abbreviations = load_word_set(p)?;
        }
        if let Some(p) = &paths.markers {
            res.markers = MarkerList::load(p)?;
        }
        if let Some(p) = &paths.deverbal {
            res.deverbal = DeverbalLexicon::load(p)?;
        }
        if let Some(p) = &paths.gazetteer {
            res.gazetteer = Gazetteer::load(p)?;
        }
        if let Some(p) = &paths.pos_lexicon {
            res.pos = PosLexicon::load(p)?;
        }
        Ok(res)
    }

    /// Noun forms for a verb lemma plus, for each noun form, its `n` nearest
    /// embedding neighbors. Empty for verbs missing from the lexicon; `n = 0`
    /// disables the expansion.
    pub fn deverbal_nouns(&self, verb_lemma: &str, n: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        if let Some(nouns) = self.deverbal.nouns(&verb_lemma.to_lowercase()) {
            for noun in nouns {
                out.insert(noun.clone());
                if n > 0 {
                    out.extend(self.vectors.nearest_words(noun, n));
                }
            }
        }
        out
    }
}
