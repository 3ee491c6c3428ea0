//! # summpip
//!
//! Unsupervised multi-document summarization built from four stages:
//!
//! 1. **Ingest** ([`ingest`]): split a cluster of related documents into
//!    sentences, tokenize, and truncate to a token budget.
//! 2. **Sentence graph** ([`graph`]): connect sentence pairs that share a
//!    deverbal-noun reference, a named entity, an adjacency discourse marker,
//!    or a high embedding similarity.
//! 3. **Spectral clustering** ([`cluster`]): partition the sentence graph
//!    with the normalized Laplacian, its smallest eigenvectors, and k-means.
//! 4. **Compression** ([`compress`]): merge each sentence cluster into a word
//!    graph and emit the best shortest-path compression, re-ranked by
//!    keyphrase content.
//!
//! [`rouge`] provides ROUGE-1/2/SU4 scoring for evaluating output summaries,
//! and [`pipeline`] wires the stages into batch runs over cluster files.
//!
//! All stages are deterministic for a fixed seed and safe to run in parallel
//! across document clusters.

pub mod cluster;
pub mod compress;
pub mod config;
pub mod error;
pub mod graph;
pub mod ingest;
pub mod pipeline;
pub mod resources;
pub mod rouge;

pub use config::{PipelineConfig, Preset, ResourcePaths};
pub use error::{Error, Result};
