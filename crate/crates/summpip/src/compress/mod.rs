//! Multi-sentence compression: one sentence per sentence cluster via word
//! graph, K-shortest paths, keyphrase-aware re-ranking, and summary assembly.

mod keyphrase;
mod paths;
mod word_graph;

use std::collections::BTreeMap;

use crate::cluster::ClusterAssignment;
use crate::config::PipelineConfig;
use crate::ingest::Sentence;
use crate::resources::{cosine, Resources};

pub use keyphrase::keyphrase_scores;
pub use paths::{enumerate_k_shortest, k_shortest_paths, CompressionCandidate};
pub use word_graph::{build_word_graph, realize, NodeKind, WordGraph, WordNode, END, START};

/// Output sentence of one cluster; `fallback` marks sentences emitted
/// verbatim instead of through the word graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedSentence {
    pub text: String,
    pub fallback: bool,
}

/// Final summary of one document cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub sentences: Vec<String>,
    /// Cluster label each output sentence came from, parallel to `sentences`.
    pub source_cluster_ids: Vec<usize>,
    /// Parallel fallback flags.
    pub fallback_flags: Vec<bool>,
}

impl Summary {
    pub fn joined(&self) -> String {
        self.sentences.join(" ")
    }
}

/// Score candidates against the keyphrase map and return the winner:
/// `rerank_score = raw_weight / (content_len * (1 + sum of contained phrase
/// scores))`, minimum wins, ties to the shorter path then the
/// lexicographically smaller token sequence.
pub fn rerank(
    candidates: &[CompressionCandidate],
    phrase_scores: &BTreeMap<String, f64>,
    graph: &WordGraph,
) -> CompressionCandidate {
    assert!(
        !candidates.is_empty(),
        "rerank needs at least one candidate"
    );
    let mut best: Option<(CompressionCandidate, Vec<String>)> = None;
    for candidate in candidates {
        let lowers: Vec<String> = candidate
            .path
            .iter()
            .filter_map(|&id| graph.nodes[id].lower().map(str::to_string))
            .collect();
        let mut phrase_mass = 0.0;
        for (phrase, score) in phrase_scores {
            let words: Vec<&str> = phrase.split(' ').collect();
            if contains_contiguous(&lowers, &words) {
                phrase_mass += score;
            }
        }
        let mut scored = candidate.clone();
        scored.rerank_score = scored.raw_weight / (scored.content_len as f64 * (1.0 + phrase_mass));
        let replace = match &best {
            None => true,
            Some((current, current_lowers)) => {
                match scored.rerank_score.total_cmp(&current.rerank_score) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => match scored.word_len.cmp(&current.word_len) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => lowers < *current_lowers,
                    },
                }
            }
        };
        if replace {
            best = Some((scored, lowers));
        }
    }
    best.expect("candidates are non-empty").0
}

fn contains_contiguous(haystack: &[String], needle: &[&str]) -> bool {
    if needle.is_empty() || needle.len() > haystack.len() {
        return false;
    }
    haystack
        .windows(needle.len())
        .any(|w| w.iter().zip(needle).all(|(a, b)| a == b))
}

/// Compress one sentence cluster into a single sentence. Falls back to the
/// centroid sentence (highest mean cosine to the rest) when the word graph
/// yields no candidate surviving the length and verb filters; singleton
/// clusters return their sentence verbatim.
pub fn compress_cluster(
    cluster_sentences: &[&Sentence],
    res: &Resources,
    config: &PipelineConfig,
) -> CompressedSentence {
    assert!(!cluster_sentences.is_empty(), "cluster must be non-empty");
    if cluster_sentences.len() == 1 {
        return CompressedSentence {
            text: cluster_sentences[0].text.clone(),
            fallback: true,
        };
    }

    let graph = build_word_graph(cluster_sentences, &res.pos);
    let candidates = k_shortest_paths(&graph, config.k_paths, config.min_words);
    if candidates.is_empty() {
        return CompressedSentence {
            text: centroid_sentence(cluster_sentences, res).text.clone(),
            fallback: true,
        };
    }
    let phrases = keyphrase_scores(cluster_sentences, &res.pos);
    let winner = rerank(&candidates, &phrases, &graph);
    CompressedSentence {
        text: realize(&graph, &winner.path),
        fallback: false,
    }
}

/// The sentence with the highest average cosine similarity to the other
/// cluster members; earliest global index on ties.
fn centroid_sentence<'a>(sentences: &[&'a Sentence], res: &Resources) -> &'a Sentence {
    let embeddings: Vec<Vec<f64>> = sentences
        .iter()
        .map(|s| res.vectors.sentence_embedding(s))
        .collect();
    let mut order: Vec<usize> = (0..sentences.len()).collect();
    order.sort_by_key(|&i| sentences[i].global_index);
    let mut best = order[0];
    let mut best_score = f64::NEG_INFINITY;
    for &i in &order {
        let mut total = 0.0;
        for (j, other) in embeddings.iter().enumerate() {
            if i != j {
                total += cosine(&embeddings[i], other);
            }
        }
        let mean = total / (sentences.len() - 1) as f64;
        if mean > best_score {
            best_score = mean;
            best = i;
        }
    }
    sentences[best]
}

/// Compress every non-empty cluster, order outputs by the minimum global
/// index inside each cluster, and drop exact duplicate sentences.
pub fn assemble_summary(
    assignment: &ClusterAssignment,
    sentences: &[Sentence],
    res: &Resources,
    config: &PipelineConfig,
) -> Summary {
    assert_eq!(
        assignment.labels.len(),
        sentences.len(),
        "assignment must cover all sentences"
    );
    let mut members: BTreeMap<usize, Vec<&Sentence>> = BTreeMap::new();
    for (sentence, &label) in sentences.iter().zip(&assignment.labels) {
        members.entry(label).or_default().push(sentence);
    }

    let mut outputs: Vec<(usize, usize, CompressedSentence)> = Vec::new();
    for (label, mut group) in members {
        group.sort_by_key(|s| s.global_index);
        let min_global = group[0].global_index;
        let compressed = compress_cluster(&group, res, config);
        outputs.push((min_global, label, compressed));
    }
    outputs.sort_by_key(|&(min_global, label, _)| (min_global, label));

    let mut summary = Summary {
        sentences: Vec::new(),
        source_cluster_ids: Vec::new(),
        fallback_flags: Vec::new(),
    };
    for (_, label, compressed) in outputs {
        if summary.sentences.contains(&compressed.text) {
            continue;
        }
        summary.sentences.push(compressed.text);
        summary.source_cluster_ids.push(label);
        summary.fallback_flags.push(compressed.fallback);
    }
    summary
}
