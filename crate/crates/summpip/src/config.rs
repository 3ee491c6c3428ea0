//! Pipeline configuration and dataset presets.

use std::path::PathBuf;

use crate::error::{Error, Result};

/// File-system overrides for the shipped lexicon data. Any `None` entry falls
/// back to the data file compiled into the crate. Word vectors have no
/// built-in default; with `vectors: None` the pipeline runs with an empty
/// vector store (no similarity edges, no neighbor expansion).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResourcePaths {
    pub vectors: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
    pub markers: Option<PathBuf>,
    pub deverbal: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub pos_lexicon: Option<PathBuf>,
}

/// Bundled hyperparameter defaults for the two supported corpora.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    MultiNews,
    Duc2004,
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "multinews" | "multi-news" => Ok(Preset::MultiNews),
            "duc2004" | "duc-2004" => Ok(Preset::Duc2004),
            other => Err(format!(
                "unknown preset '{other}' (expected multinews or duc2004)"
            )),
        }
    }
}

/// All knobs of the summarization pipeline. Defaults are the Multi-News
/// settings; [`PipelineConfig::preset`] switches the numeric fields as a
/// block while leaving resource paths untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Token budget for truncating each concatenated cluster.
    pub token_budget: usize,
    /// Number of sentence clusters (k) handed to spectral clustering.
    pub num_clusters: usize,
    /// Minimum content-word count for a compression path.
    pub min_words: usize,
    /// Cosine threshold for similarity edges.
    pub sim_threshold: f64,
    /// Nearest-neighbor count used when expanding deverbal nouns.
    pub neighbor_count: usize,
    /// How many shortest paths to enumerate before filtering.
    pub k_paths: usize,
    /// Seed for k-means initialization.
    pub seed: u64,
    /// Use per-pair cosine weights instead of unit edge weights.
    pub weighted_graph: bool,
    /// Separator between documents of one cluster line.
    pub doc_separator: String,
    pub resources: ResourcePaths,
}

pub const DEFAULT_DOC_SEPARATOR: &str = "story_separator_special_tag";

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            token_budget: 500,
            num_clusters: 9,
            min_words: 5,
            sim_threshold: 0.98,
            neighbor_count: 10,
            k_paths: 100,
            seed: 42,
            weighted_graph: false,
            doc_separator: DEFAULT_DOC_SEPARATOR.to_string(),
            resources: ResourcePaths::default(),
        }
    }
}

impl PipelineConfig {
    pub fn preset(preset: Preset) -> Self {
        let base = PipelineConfig::default();
        match preset {
            Preset::MultiNews => base,
            Preset::Duc2004 => PipelineConfig {
                token_budget: 1500,
                num_clusters: 7,
                min_words: 14,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.token_budget == 0 {
            return Err(Error::Config("token_budget must be positive".into()));
        }
        if self.num_clusters == 0 {
            return Err(Error::Config("num_clusters must be positive".into()));
        }
        if self.min_words == 0 {
            return Err(Error::Config("min_words must be positive".into()));
        }
        if self.k_paths == 0 {
            return Err(Error::Config("k_paths must be positive".into()));
        }
        if self.neighbor_count == 0 {
            return Err(Error::Config("neighbor_count must be positive".into()));
        }
        if !(self.sim_threshold > 0.0 && self.sim_threshold <= 1.0) {
            return Err(Error::Config(format!(
                "sim_threshold must be in (0, 1], got {}",
                self.sim_threshold
            )));
        }
        if self.doc_separator.is_empty() {
            return Err(Error::Config("doc_separator must be non-empty".into()));
        }
        Ok(())
    }
}
