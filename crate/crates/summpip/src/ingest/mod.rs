//! Document loading, sentence splitting, tokenization, and truncation.
//!
//! Input clusters arrive as one line per cluster with documents joined by a
//! separator token. Everything here is a pure function of its inputs; the
//! [`Ingestor`] only carries the stopword and abbreviation sets.

mod splitter;
mod tokenize;

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub use splitter::SentenceSplitter;
pub use tokenize::tokenize;

/// One word or punctuation mark of a sentence. Stopwords are flagged, never
/// dropped; the compression stage needs them for fluent output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Case-folded surface, used for all lexicon lookups.
    pub lower: String,
    pub is_stopword: bool,
    pub is_punct: bool,
}

impl Token {
    pub fn new(surface: impl Into<String>, stopwords: &HashSet<String>) -> Self {
        let surface = surface.into();
        debug_assert!(!surface.is_empty());
        let lower = surface.to_lowercase();
        let is_punct = !surface.chars().any(char::is_alphanumeric);
        let is_stopword = !is_punct && stopwords.contains(&lower);
        Token {
            surface,
            lower,
            is_stopword,
            is_punct,
        }
    }

    /// A content token carries lexical meaning: not a stopword, not punctuation.
    pub fn is_content(&self) -> bool {
        !self.is_stopword && !self.is_punct
    }
}

/// A tokenized sentence with its provenance inside the cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    /// Raw sentence text as produced by the splitter.
    pub text: String,
    pub tokens: Vec<Token>,
    /// Which source document the sentence came from.
    pub doc_index: usize,
    /// Position within that document.
    pub sent_index: usize,
    /// Position in the concatenated cluster; unique and gapless.
    pub global_index: usize,
}

impl Sentence {
    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }
}

/// One summarization instance: the raw source documents plus their sentences
/// in (doc_index, sent_index) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentCluster {
    pub id: String,
    pub documents: Vec<String>,
    pub sentences: Vec<Sentence>,
    /// Budget the sentence list currently respects (total tokens after load,
    /// the applied budget after [`truncate_cluster`]).
    pub token_budget: usize,
}

impl DocumentCluster {
    pub fn total_tokens(&self) -> usize {
        self.sentences.iter().map(Sentence::token_count).sum()
    }
}

/// Splits documents into sentences and tokens. Construction is cheap; the
/// sets are borrowed nowhere, so one `Ingestor` can serve many threads.
#[derive(Debug, Clone)]
pub struct Ingestor {
    splitter: SentenceSplitter,
    stopwords: HashSet<String>,
    abbreviations: HashSet<String>,
}

impl Ingestor {
    pub fn new(stopwords: HashSet<String>, abbreviations: HashSet<String>) -> Self {
        Ingestor {
            splitter: SentenceSplitter::new(abbreviations.clone()),
            stopwords,
            abbreviations,
        }
    }

    pub fn split_sentences(&self, document: &str) -> Vec<String> {
        self.splitter.split(document)
    }

    pub fn tokenize(&self, sentence_text: &str) -> Vec<Token> {
        tokenize(sentence_text, &self.stopwords, &self.abbreviations)
    }

    /// Build a cluster from raw document texts, assigning gapless global
    /// sentence indices in document order.
    pub fn cluster_from_documents(
        &self,
        id: impl Into<String>,
        documents: Vec<String>,
    ) -> DocumentCluster {
        let mut sentences = Vec::new();
        let mut global_index = 0;
        for (doc_index, doc) in documents.iter().enumerate() {
            for (sent_index, text) in self.split_sentences(doc).into_iter().enumerate() {
                let tokens = self.tokenize(&text);
                if tokens.is_empty() {
                    continue;
                }
                sentences.push(Sentence {
                    text,
                    tokens,
                    doc_index,
                    sent_index,
                    global_index,
                });
                global_index += 1;
            }
        }
        let token_budget = sentences
            .iter()
            .map(Sentence::token_count)
            .sum::<usize>()
            .max(1);
        DocumentCluster {
            id: id.into(),
            documents,
            sentences,
            token_budget,
        }
    }

    /// Read a cluster file: one cluster per non-empty line, documents joined
    /// by `doc_separator`. Cluster ids are the 0-based ordinal of the emitted
    /// cluster.
    pub fn load_cluster_file(
        &self,
        path: &Path,
        doc_separator: &str,
    ) -> Result<Vec<DocumentCluster>> {
        assert!(
            !doc_separator.is_empty(),
            "document separator must be non-empty"
        );
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(self.load_cluster_lines(&content, doc_separator))
    }

    pub fn load_cluster_lines(&self, content: &str, doc_separator: &str) -> Vec<DocumentCluster> {
        let mut clusters = Vec::new();
        for line in content.lines() {
            if line.trim().is_empty() {
                continue;
            }
            let documents: Vec<String> = line
                .split(doc_separator)
                .map(str::trim)
                .filter(|d| !d.is_empty())
                .map(str::to_string)
                .collect();
            let id = clusters.len().to_string();
            clusters.push(self.cluster_from_documents(id, documents));
        }
        clusters
    }
}

/// Keep the longest sentence prefix whose token total fits `budget`, never
/// splitting a sentence. The first sentence survives even when it alone
/// exceeds the budget.
pub fn truncate_cluster(cluster: &DocumentCluster, budget: usize) -> DocumentCluster {
    assert!(budget > 0, "token budget must be positive");
    let mut kept = Vec::new();
    let mut used = 0;
    for sentence in &cluster.sentences {
        let len = sentence.token_count();
        if !kept.is_empty() && used + len > budget {
            break;
        }
        used += len;
        kept.push(sentence.clone());
        if used >= budget {
            break;
        }
    }
    DocumentCluster {
        id: cluster.id.clone(),
        documents: cluster.documents.clone(),
        sentences: kept,
        token_budget: budget,
    }
}

#[cfg(test)]
pub(crate) fn test_stopwords() -> HashSet<String> {
    [
        "the", "a", "an", "of", "to", "is", "was", "he", "she", "it", "and", "in", "by", "on",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

#[cfg(test)]
pub(crate) fn test_ingestor() -> Ingestor {
    let abbreviations = ["mr.", "mrs.", "dr.", "u.s.", "etc.", "e.g."]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ingestor::new(test_stopwords(), abbreviations)
}
