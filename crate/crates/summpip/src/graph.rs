//! Sentence graph construction.
//!
//! Two sentences are connected when any of four conditions holds:
//! a deverbal-noun reference from an earlier to a later sentence of the same
//! document, a shared entity mention (same surface, same type), a discourse
//! marker opening the directly following sentence, or embedding cosine
//! similarity at or above the threshold. Edges are undirected and may carry
//! several rule labels.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::config::PipelineConfig;
use crate::ingest::{DocumentCluster, Sentence};
use crate::resources::{
    cosine, detect_entities, EntityMention, MarkerList, Resources, WordVectorStore,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeRule {
    Deverbal,
    Entity,
    Marker,
    Similarity,
}

impl EdgeRule {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeRule::Deverbal => "DEVERBAL",
            EdgeRule::Entity => "ENTITY",
            EdgeRule::Marker => "MARKER",
            EdgeRule::Similarity => "SIMILARITY",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeLabel {
    pub rule: EdgeRule,
    /// 1.0 in unweighted mode, otherwise the pair's clamped cosine.
    pub weight: f64,
}

/// Undirected sentence graph. Edges are stored once under the ordered pair
/// `(min, max)`; the accessors hide the canonicalization.
#[derive(Debug, Clone)]
pub struct SentenceGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Vec<EdgeLabel>>,
    weighted_mode: bool,
}

impl SentenceGraph {
    pub fn new(n: usize, weighted_mode: bool) -> Self {
        SentenceGraph {
            n,
            edges: BTreeMap::new(),
            weighted_mode,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weighted_mode(&self) -> bool {
        self.weighted_mode
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn add_edge(&mut self, i: usize, j: usize, label: EdgeLabel) {
        assert!(i != j, "self-loops are not allowed");
        assert!(i < self.n && j < self.n, "node index out of range");
        assert!(
            label.weight > 0.0 && label.weight <= 1.0,
            "edge weight must lie in (0, 1]"
        );
        let key = (i.min(j), i.max(j));
        self.edges.entry(key).or_default().push(label);
    }

    pub fn labels(&self, i: usize, j: usize) -> Option<&[EdgeLabel]> {
        self.edges.get(&(i.min(j), i.max(j))).map(Vec::as_slice)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.labels(i, j).is_some()
    }

    /// Iterate edges as `((i, j), labels)` with `i < j`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), &[EdgeLabel])> {
        self.edges.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// Adjacency value for the Laplacian: the maximum label weight (labels of
    /// one pair share their weight by construction).
    pub fn adjacency_weight(&self, i: usize, j: usize) -> f64 {
        self.labels(i, j)
            .map(|ls| ls.iter().map(|l| l.weight).fold(0.0, f64::max))
            .unwrap_or(0.0)
    }

    /// Debug edge list: one `i j RULE[,RULE...] weight` line per edge,
    /// node order ascending.
    pub fn dump_edge_list(&self) -> String {
        let mut out = String::new();
        for (&(i, j), labels) in &self.edges {
            let rules = labels
                .iter()
                .map(|l| l.rule.as_str())
                .collect::<Vec<_>>()
                .join(",");
            let weight = labels.iter().map(|l| l.weight).fold(0.0, f64::max);
            let _ = writeln!(out, "{i} {j} {rules} {weight}");
        }
        out
    }
}

/// Deverbal-noun reference: some verb of `s_i` maps (via the lexicon plus
/// embedding neighbors) to a word set intersecting `s_j`'s non-stopword
/// tokens. Forward-only and intra-document; callers uphold the precondition.
pub fn edge_deverbal(
    s_i: &Sentence,
    s_j: &Sentence,
    res: &Resources,
    neighbor_count: usize,
) -> bool {
    debug_assert!(s_i.global_index < s_j.global_index && s_i.doc_index == s_j.doc_index);
    let later_words: BTreeSet<&str> = s_j
        .tokens
        .iter()
        .filter(|t| !t.is_stopword)
        .map(|t| t.lower.as_str())
        .collect();
    if later_words.is_empty() {
        return false;
    }
    for token in &s_i.tokens {
        if token.is_punct || token.is_stopword {
            continue;
        }
        if let Some(lemma) = res.pos.verb_lemma(&token.lower) {
            let nouns = res.deverbal_nouns(&lemma, neighbor_count);
            if nouns.iter().any(|n| later_words.contains(n.as_str())) {
                return true;
            }
        }
    }
    false
}

/// Entity continuation: both sentences mention an entity with the same
/// case-folded surface and the same type.
pub fn edge_entity(s_i: &Sentence, s_j: &Sentence, res: &Resources) -> bool {
    let a = detect_entities(s_i, &res.gazetteer);
    if a.is_empty() {
        return false;
    }
    let b = detect_entities(s_j, &res.gazetteer);
    entity_match(&a, &b)
}

fn entity_match(a: &[EntityMention], b: &[EntityMention]) -> bool {
    a.iter().any(|m| {
        let surface = m.surface.to_lowercase();
        b.iter()
            .any(|o| o.entity_type == m.entity_type && o.surface.to_lowercase() == surface)
    })
}

/// Discourse marker: `s_j` directly follows `s_i` in the same document and
/// opens with a marker.
pub fn edge_marker(s_i: &Sentence, s_j: &Sentence, markers: &MarkerList) -> bool {
    s_i.doc_index == s_j.doc_index
        && s_j.sent_index == s_i.sent_index + 1
        && markers.matches_sentence_start(&s_j.tokens)
}

/// Embedding similarity: cosine of the two mean-vector embeddings reaches the
/// threshold. Fully-OOV sentences embed to zero and never connect.
pub fn edge_similarity(
    s_i: &Sentence,
    s_j: &Sentence,
    store: &WordVectorStore,
    threshold: f64,
) -> bool {
    cosine(
        &store.sentence_embedding(s_i),
        &store.sentence_embedding(s_j),
    ) >= threshold
}

/// Build the full sentence graph for a cluster. Rule evaluation order never
/// affects the result; labels per pair are recorded in the fixed order
/// DEVERBAL, ENTITY, MARKER, SIMILARITY.
pub fn build_sentence_graph(
    cluster: &DocumentCluster,
    res: &Resources,
    config: &PipelineConfig,
) -> SentenceGraph {
    let sentences = &cluster.sentences;
    let n = sentences.len();
    assert!(n >= 1, "cluster must contain at least one sentence");
    let mut graph = SentenceGraph::new(n, config.weighted_graph);

    // Precompute the per-sentence data every pairwise test needs.
    let embeddings: Vec<Vec<f64>> = sentences
        .iter()
        .map(|s| res.vectors.sentence_embedding(s))
        .collect();
    let entities: Vec<Vec<EntityMention>> = sentences
        .iter()
        .map(|s| detect_entities(s, &res.gazetteer))
        .collect();
    // Deverbal noun sets are the expensive part (nearest-neighbor expansion);
    // compute once per distinct verb lemma in the cluster.
    let mut noun_sets: HashMap<String, BTreeSet<String>> = HashMap::new();
    let verb_lemmas: Vec<Vec<String>> = sentences
        .iter()
        .map(|s| {
            s.tokens
                .iter()
                .filter(|t| !t.is_punct && !t.is_stopword)
                .filter_map(|t| res.pos.verb_lemma(&t.lower))
                .collect()
        })
        .collect();
    for lemmas in &verb_lemmas {
        for lemma in lemmas {
            noun_sets
                .entry(lemma.clone())
                .or_insert_with(|| res.deverbal_nouns(lemma, config.neighbor_count));
        }
    }
    let later_words: Vec<BTreeSet<&str>> = sentences
        .iter()
        .map(|s| {
            s.tokens
                .iter()
                .filter(|t| !t.is_stopword)
                .map(|t| t.lower.as_str())
                .collect()
        })
        .collect();

    for i in 0..n {
        for j in (i + 1)..n {
            let (s_i, s_j) = (&sentences[i], &sentences[j]);
            let mut rules = Vec::new();

            if s_i.doc_index == s_j.doc_index {
                let hit = verb_lemmas[i].iter().any(|lemma| {
                    noun_sets[lemma]
                        .iter()
                        .any(|n| later_words[j].contains(n.as_str()))
                });
                if hit {
                    rules.push(EdgeRule::Deverbal);
                }
            }
            if entity_match(&entities[i], &entities[j]) {
                rules.push(EdgeRule::Entity);
            }
            if edge_marker(s_i, s_j, &res.markers) {
                rules.push(EdgeRule::Marker);
            }
            let sim = cosine(&embeddings[i], &embeddings[j]);
            if sim >= config.sim_threshold {
                rules.push(EdgeRule::Similarity);
            }

            if !rules.is_empty() {
                let weight = if config.weighted_graph {
                    sim.clamp(1e-6, 1.0)
                } else {
                    1.0
                };
                for rule in rules {
                    graph.add_edge(i, j, EdgeLabel { rule, weight });
                }
            }
        }
    }
    graph
}
