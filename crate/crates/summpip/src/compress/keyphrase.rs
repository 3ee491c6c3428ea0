//! Keyphrase scoring: PageRank over a window-2 co-occurrence graph of
//! noun/adjective words, with phrases as maximal contiguous candidate runs.

use std::collections::{BTreeMap, HashMap};

use crate::ingest::Sentence;
use crate::resources::{CoarsePos, PosLexicon};

const DAMPING: f64 = 0.85;
const CONVERGENCE: f64 = 1e-6;
const MAX_ITERATIONS: usize = 100;

/// Phrase -> positive salience score. Candidate words are NOUN/ADJ tokens;
/// a keyphrase is a maximal contiguous candidate run observed in some
/// sentence, scored as the sum of its member word scores.
pub fn keyphrase_scores(
    sentences: &[&Sentence],
    pos_lexicon: &PosLexicon,
) -> BTreeMap<String, f64> {
    let mut word_index: HashMap<String, usize> = HashMap::new();
    let mut words: Vec<String> = Vec::new();
    let tagged: Vec<Vec<bool>> = sentences
        .iter()
        .map(|s| {
            s.tokens
                .iter()
                .map(|t| matches!(pos_lexicon.tag_token(t), CoarsePos::Noun | CoarsePos::Adj))
                .collect()
        })
        .collect();

    for (s, sentence) in sentences.iter().enumerate() {
        for (t, token) in sentence.tokens.iter().enumerate() {
            if tagged[s][t] && !word_index.contains_key(&token.lower) {
                word_index.insert(token.lower.clone(), words.len());
                words.push(token.lower.clone());
            }
        }
    }
    if words.is_empty() {
        return BTreeMap::new();
    }

    // Window-2 co-occurrence: adjacent candidate tokens share an edge.
    let n = words.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (s, sentence) in sentences.iter().enumerate() {
        for (t, pair) in tagged[s].windows(2).enumerate() {
            if pair[0] && pair[1] {
                let a = word_index[&sentence.tokens[t].lower];
                let b = word_index[&sentence.tokens[t + 1].lower];
                if a != b && !adjacency[a].contains(&b) {
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }

    let scores = pagerank(&adjacency);

    let mut phrases = BTreeMap::new();
    for (s, sentence) in sentences.iter().enumerate() {
        let mut start = None;
        for t in 0..=sentence.tokens.len() {
            let candidate = tagged[s].get(t).copied().unwrap_or(false);
            match (start, candidate) {
                (None, true) => start = Some(t),
                (Some(b), false) => {
                    let phrase: Vec<&str> = sentence.tokens[b..t]
                        .iter()
                        .map(|tok| tok.lower.as_str())
                        .collect();
                    let score: f64 = phrase.iter().map(|w| scores[word_index[*w]]).sum();
                    phrases.entry(phrase.join(" ")).or_insert(score);
                    start = None;
                }
                _ => {}
            }
        }
    }
    phrases
}

/// Uniform-teleport PageRank on an undirected, unweighted graph; dangling
/// mass is redistributed uniformly.
fn pagerank(adjacency: &[Vec<usize>]) -> Vec<f64> {
    let n = adjacency.len();
    let uniform = 1.0 / n as f64;
    let mut scores = vec![uniform; n];
    for _ in 0..MAX_ITERATIONS {
        let dangling: f64 = (0..n)
            .filter(|&i| adjacency[i].is_empty())
            .map(|i| scores[i])
            .sum();
        let mut next = vec![(1.0 - DAMPING) * uniform + DAMPING * dangling * uniform; n];
        for (i, neighbors) in adjacency.iter().enumerate() {
            if neighbors.is_empty() {
                continue;
            }
            let share = DAMPING * scores[i] / neighbors.len() as f64;
            for &j in neighbors {
                next[j] += share;
            }
        }
        let delta = scores
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        scores = next;
        if delta < CONVERGENCE {
            break;
        }
    }
    scores
}
