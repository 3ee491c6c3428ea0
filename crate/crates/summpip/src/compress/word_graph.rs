//! Directed word graph over (word, POS) nodes with synthetic START/END.
//!
//! Every input sentence maps to a START-to-END walk. A token joins an
//! existing node with the same key when that node has no occurrence from the
//! current sentence yet; ambiguous content words prefer the candidate with
//! the largest adjacent-word overlap, then higher frequency, then earliest
//! creation. Stopwords and punctuation only merge when an adjacent content
//! word overlaps too, which keeps function words from collapsing unrelated
//! contexts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::ingest::Sentence;
use crate::resources::{CoarsePos, PosLexicon};

pub const START: usize = 0;
pub const END: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Start,
    End,
    Word { lower: String, pos: CoarsePos },
}

#[derive(Debug, Clone)]
pub struct WordNode {
    pub kind: NodeKind,
    /// (sentence ordinal, 1-based token position); START uses position 0 and
    /// END uses length + 1. At most one occurrence per sentence.
    pub occurrences: Vec<(usize, usize)>,
    /// Original surface per occurrence (empty for START/END).
    pub surfaces: Vec<String>,
    pub is_stopword: bool,
}

impl WordNode {
    pub fn freq(&self) -> usize {
        self.occurrences.len()
    }

    pub fn pos(&self) -> Option<CoarsePos> {
        match &self.kind {
            NodeKind::Word { pos, .. } => Some(*pos),
            _ => None,
        }
    }

    pub fn lower(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Word { lower, .. } => Some(lower),
            _ => None,
        }
    }

    /// True for word nodes that carry content: neither stopword nor punctuation.
    pub fn is_content(&self) -> bool {
        matches!(&self.kind, NodeKind::Word { pos, .. } if *pos != CoarsePos::Punct)
            && !self.is_stopword
    }

    /// The most frequent original casing, earliest-seen on ties.
    pub fn display_surface(&self) -> &str {
        let mut counts: HashMap<&str, (usize, usize)> = HashMap::new();
        for (idx, s) in self.surfaces.iter().enumerate() {
            let entry = counts.entry(s.as_str()).or_insert((0, idx));
            entry.0 += 1;
        }
        counts
            .into_iter()
            .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
            .map(|(s, _)| s)
            .unwrap_or("")
    }
}

#[derive(Debug, Clone)]
pub struct WordGraph {
    pub nodes: Vec<WordNode>,
    /// Directed arc (u, v) -> weight; lower weight = stronger connection.
    pub arcs: BTreeMap<(usize, usize), f64>,
    num_sentences: usize,
}

impl WordGraph {
    pub fn num_sentences(&self) -> usize {
        self.num_sentences
    }

    pub fn successors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.arcs
            .range((u, 0)..(u + 1, 0))
            .map(|(&(_, v), &w)| (v, w))
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.arcs
            .iter()
            .filter(move |(&(_, t), _)| t == v)
            .map(|(&(u, _), &w)| (u, w))
    }

    /// Total order over nodes used for deterministic path tie-breaking:
    /// word nodes sort by (lower, pos, id), START before all words, END after.
    pub fn sort_ranks(&self) -> Vec<u32> {
        let mut ids: Vec<usize> = (0..self.nodes.len()).collect();
        ids.sort_by(|&a, &b| self.node_key(a).cmp(&self.node_key(b)));
        let mut ranks = vec![0u32; self.nodes.len()];
        for (rank, &id) in ids.iter().enumerate() {
            ranks[id] = rank as u32;
        }
        ranks
    }

    fn node_key(&self, id: usize) -> (u8, &str, u8, usize) {
        match &self.nodes[id].kind {
            NodeKind::Start => (0, "", 0, id),
            NodeKind::Word { lower, pos } => (1, lower.as_str(), *pos as u8, id),
            NodeKind::End => (2, "", 0, id),
        }
    }
}

/// Build the word graph for a set of sentences (added in global_index order).
pub fn build_word_graph(sentences: &[&Sentence], pos_lexicon: &PosLexicon) -> WordGraph {
    assert!(
        !sentences.is_empty(),
        "word graph needs at least one sentence"
    );
    let mut ordered: Vec<&Sentence> = sentences.to_vec();
    ordered.sort_by_key(|s| s.global_index);

    let mut nodes = vec![
        WordNode {
            kind: NodeKind::Start,
            occurrences: Vec::new(),
            surfaces: Vec::new(),
            is_stopword: false,
        },
        WordNode {
            kind: NodeKind::End,
            occurrences: Vec::new(),
            surfaces: Vec::new(),
            is_stopword: false,
        },
    ];
    let mut transitions: BTreeSet<(usize, usize)> = BTreeSet::new();

    for (si, sentence) in ordered.iter().enumerate() {
        let tokens = &sentence.tokens;
        let tags: Vec<CoarsePos> = tokens.iter().map(|t| pos_lexicon.tag_token(t)).collect();
        let mut walk = vec![START];
        nodes[START].occurrences.push((si, 0));

        for (ti, token) in tokens.iter().enumerate() {
            let position = ti + 1;
            let key = NodeKind::Word {
                lower: token.lower.clone(),
                pos: tags[ti],
            };
            let candidates: Vec<usize> = (2..nodes.len())
                .filter(|&id| nodes[id].kind == key)
                .filter(|&id| nodes[id].occurrences.iter().all(|&(s, _)| s != si))
                .collect();

            let current_ctx = adjacent_lowers(&ordered, si, position, false);
            let current_content_ctx = adjacent_lowers(&ordered, si, position, true);

            let chosen = if token.is_content() {
                candidates
                    .iter()
                    .copied()
                    .map(|id| {
                        let overlap = context_overlap(&nodes[id], &ordered, &current_ctx, false);
                        (id, overlap)
                    })
                    .max_by(|a, b| {
                        a.1.cmp(&b.1)
                            .then(nodes[a.0].freq().cmp(&nodes[b.0].freq()))
                            .then(b.0.cmp(&a.0)) // earliest creation wins
                    })
                    .map(|(id, _)| id)
            } else {
                candidates
                    .iter()
                    .copied()
                    .map(|id| {
                        let overlap =
                            context_overlap(&nodes[id], &ordered, &current_content_ctx, true);
                        (id, overlap)
                    })
                    .filter(|&(_, overlap)| overlap > 0)
                    .max_by(|a, b| {
                        a.1.cmp(&b.1)
                            .then(nodes[a.0].freq().cmp(&nodes[b.0].freq()))
                            .then(b.0.cmp(&a.0))
                    })
                    .map(|(id, _)| id)
            };

            let id = match chosen {
                Some(id) => id,
                None => {
                    nodes.push(WordNode {
                        kind: key,
                        occurrences: Vec::new(),
                        surfaces: Vec::new(),
                        is_stopword: token.is_stopword,
                    });
                    nodes.len() - 1
                }
            };
            nodes[id].occurrences.push((si, position));
            nodes[id].surfaces.push(token.surface.clone());
            walk.push(id);
        }

        nodes[END].occurrences.push((si, tokens.len() + 1));
        walk.push(END);
        for pair in walk.windows(2) {
            transitions.insert((pair[0], pair[1]));
        }
    }

    // Filippova-style arc weights: rarer, tightly co-occurring word pairs get
    // lower (= better) weights. dist is the positional offset inside each
    // sentence where u precedes v.
    let position_maps: Vec<HashMap<usize, usize>> = nodes
        .iter()
        .map(|n| n.occurrences.iter().copied().collect())
        .collect();
    let mut arcs = BTreeMap::new();
    for (u, v) in transitions {
        let freq_u = nodes[u].freq() as f64;
        let freq_v = nodes[v].freq() as f64;
        let mut diversity = 0.0;
        for &(s, pu) in &nodes[u].occurrences {
            if let Some(&pv) = position_maps[v].get(&s) {
                if pu < pv {
                    diversity += 1.0 / (pv - pu) as f64;
                }
            }
        }
        debug_assert!(diversity > 0.0, "arc without a supporting sentence");
        let weight = ((freq_u + freq_v) / diversity) / (freq_u * freq_v);
        arcs.insert((u, v), weight);
    }

    WordGraph {
        nodes,
        arcs,
        num_sentences: ordered.len(),
    }
}

/// Lowers of the tokens adjacent to `position` (1-based) in sentence `si`.
fn adjacent_lowers<'a>(
    sentences: &[&'a Sentence],
    si: usize,
    position: usize,
    content_only: bool,
) -> BTreeSet<&'a str> {
    let tokens = &sentences[si].tokens;
    let mut out = BTreeSet::new();
    if position >= 2 {
        let t = &tokens[position - 2];
        if !content_only || t.is_content() {
            out.insert(t.lower.as_str());
        }
    }
    if position < tokens.len() {
        let t = &tokens[position];
        if !content_only || t.is_content() {
            out.insert(t.lower.as_str());
        }
    }
    out
}

/// How many of `current_ctx`'s words appear adjacent to any occurrence of
/// `node` in its sentences.
fn context_overlap(
    node: &WordNode,
    sentences: &[&Sentence],
    current_ctx: &BTreeSet<&str>,
    content_only: bool,
) -> usize {
    let mut node_ctx: BTreeSet<&str> = BTreeSet::new();
    for &(s, p) in &node.occurrences {
        node_ctx.extend(adjacent_lowers(sentences, s, p, content_only));
    }
    current_ctx.iter().filter(|w| node_ctx.contains(*w)).count()
}

/// Join path node surfaces: spaces between words, punctuation attached to the
/// preceding token, first character capitalized.
pub fn realize(graph: &WordGraph, path: &[usize]) -> String {
    let mut out = String::new();
    for &id in path {
        let node = &graph.nodes[id];
        let NodeKind::Word { pos, .. } = &node.kind else {
            continue;
        };
        let surface = node.display_surface();
        if !out.is_empty() && *pos != CoarsePos::Punct {
            out.push(' ');
        }
        out.push_str(surface);
    }
    let mut chars = out.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => out,
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;

    fn graph_of(texts: &[&str]) -> (WordGraph, Vec<Sentence>) {
        let sentences = sentences_from(texts);
        let refs: Vec<&Sentence> = sentences.iter().collect();
        let graph = build_word_graph(&refs, &pos_fixture());
        (graph, sentences)
    }

    fn node_id(graph: &WordGraph, lower: &str) -> usize {
        (0..graph.nodes.len())
            .find(|&i| graph.nodes[i].lower() == Some(lower))
            .unwrap_or_else(|| panic!("node '{lower}' not found"))
    }

    #[test]
    fn shared_prefix_merges_nodes() {
        let (graph, _) = graph_of(&["the cat sat", "the cat ran"]);
        let lowers: BTreeSet<&str> = graph.nodes.iter().filter_map(|n| n.lower()).collect();
        assert_eq!(lowers, BTreeSet::from(["the", "cat", "sat", "ran"]));
        assert_eq!(graph.nodes[node_id(&graph, "the")].freq(), 2);
        assert_eq!(graph.nodes[node_id(&graph, "cat")].freq(), 2);
        assert_eq!(graph.nodes[node_id(&graph, "sat")].freq(), 1);
    }

    #[test]
    fn single_sentence_is_a_chain() {
        let (graph, _) = graph_of(&["the big cat sat"]);
        assert_eq!(graph.nodes.len(), 6); // START, END, 4 words
        assert_eq!(graph.arcs.len(), 5);
        for node in &graph.nodes[2..] {
            assert_eq!(node.freq(), 1);
        }
    }

    #[test]
    fn identical_sentences_double_frequencies() {
        let (one, _) = graph_of(&["the cat sat"]);
        let (two, _) = graph_of(&["the cat sat", "the cat sat"]);
        assert_eq!(one.nodes.len(), two.nodes.len());
        for (a, b) in one.nodes.iter().zip(&two.nodes).skip(2) {
            assert_eq!(a.kind, b.kind);
            assert_eq!(b.freq(), 2 * a.freq());
        }
    }

    #[test]
    fn repeated_word_in_one_sentence_gets_two_nodes() {
        let (graph, _) = graph_of(&["the cat saw the dog"]);
        let the_nodes: Vec<&WordNode> = graph
            .nodes
            .iter()
            .filter(|n| n.lower() == Some("the"))
            .collect();
        assert_eq!(the_nodes.len(), 2);
    }

    #[test]
    fn stopwords_merge_only_with_content_support() {
        // "the" before "cat" in both sentences: merges (content neighbor
        // "cat" overlaps). The second "the" (before "dog") in sentence 2 has
        // no content overlap with the free "the" node from sentence 1.
        let (graph, _) = graph_of(&["the cat sat", "the cat saw the dog"]);
        let the_nodes: Vec<usize> = (0..graph.nodes.len())
            .filter(|&i| graph.nodes[i].lower() == Some("the"))
            .collect();
        assert_eq!(the_nodes.len(), 2);
        let merged = the_nodes
            .iter()
            .map(|&i| graph.nodes[i].freq())
            .max()
            .unwrap();
        assert_eq!(merged, 2);
    }

    #[test]
    fn every_sentence_is_a_start_end_walk() {
        let (graph, sentences) = graph_of(&["the cat sat", "the cat ran", "a big cat sat"]);
        // freq of START/END equals sentence count.
        assert_eq!(graph.nodes[START].freq(), 3);
        assert_eq!(graph.nodes[END].freq(), 3);
        // Each consecutive token pair must be an arc.
        for (si, sentence) in sentences.iter().enumerate() {
            let mut prev = START;
            for (ti, _) in sentence.tokens.iter().enumerate() {
                let cur = (2..graph.nodes.len())
                    .find(|&id| graph.nodes[id].occurrences.contains(&(si, ti + 1)))
                    .expect("token mapped to a node");
                assert!(
                    graph.arcs.contains_key(&(prev, cur)),
                    "missing arc at ({si},{ti})"
                );
                prev = cur;
            }
            assert!(graph.arcs.contains_key(&(prev, END)));
        }
    }

    #[test]
    fn arc_weights_follow_frequency_formula() {
        let (graph, _) = graph_of(&["the cat sat", "the cat ran"]);
        let the = node_id(&graph, "the");
        let cat = node_id(&graph, "cat");
        // freq(the)=freq(cat)=2, both adjacent (dist 1) in two sentences:
        // w' = (2+2)/(1+1) = 2; w = 2/(2*2) = 0.5.
        let w = graph.arcs[&(the, cat)];
        assert!((w - 0.5).abs() < 1e-12);
        // START->the: freq(START)=2: same shape.
        let w0 = graph.arcs[&(START, the)];
        assert!((w0 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn weights_are_strictly_positive() {
        let (graph, _) = graph_of(&["the cat sat by the dog", "a dog ran", "the big cat ran"]);
        assert!(graph.arcs.values().all(|&w| w > 0.0));
    }

    #[test]
    fn realize_attaches_punctuation_and_capitalizes() {
        let (graph, _) = graph_of(&["police arrested him , the big cat sat"]);
        let path: Vec<usize> = {
            // Follow the chain from START.
            let mut path = vec![START];
            let mut cur = START;
            while cur != END {
                cur = graph.successors(cur).next().unwrap().0;
                path.push(cur);
            }
            path
        };
        let text = realize(&graph, &path);
        assert_eq!(text, "Police arrested him, the big cat sat");
    }

    #[test]
    fn display_surface_prefers_most_frequent_casing() {
        let (graph, _) = graph_of(&["The cat sat", "the cat ran", "the cat hit"]);
        let the = node_id(&graph, "the");
        assert_eq!(graph.nodes[the].display_surface(), "the");
    }
}
