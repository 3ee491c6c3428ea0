//! Loopless K-shortest START-to-END paths over the word graph.
//!
//! Best-first search over partial paths ordered by (cost lower bound,
//! lexicographic node keys), where the bound adds the exact remaining
//! Dijkstra distance to END. Arc weights are strictly positive, so complete
//! paths pop in exactly (total weight, key sequence) order, which pins the
//! tie-breaking the same way an offline sort would.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::word_graph::{WordGraph, END, START};
use crate::resources::CoarsePos;

/// Hard cap on heap pops per enumeration; a deterministic safety valve for
/// pathological graphs.
const MAX_POPS: usize = 500_000;

/// Extra paths enumerated beyond K before the final sort, absorbing any
/// floating-point ordering jitter at the K boundary.
const SLACK: usize = 8;

/// One enumerated compression path with its filter-relevant statistics.
#[derive(Debug, Clone)]
pub struct CompressionCandidate {
    /// Node ids including START and END.
    pub path: Vec<usize>,
    /// Sum of arc weights along the path.
    pub total_weight: f64,
    /// Total weight divided by the content-token count.
    pub raw_weight: f64,
    /// Filled by the re-ranker; lower is better.
    pub rerank_score: f64,
    /// Content tokens on the path (non-stopword, non-punctuation words).
    pub content_len: usize,
    /// All word tokens on the path.
    pub word_len: usize,
    pub has_verb: bool,
}

struct Entry {
    bound: f64,
    ranks: Vec<u32>,
    path: Vec<usize>,
    cost: f64,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap and we want the smallest bound.
        other
            .bound
            .total_cmp(&self.bound)
            .then_with(|| other.ranks.cmp(&self.ranks))
    }
}

/// Up to `k` lowest-total-weight simple START-to-END paths, ordered by
/// (total weight, lexicographic node keys). Node weights must be positive.
pub fn enumerate_k_shortest(graph: &WordGraph, k: usize) -> Vec<(Vec<usize>, f64)> {
    assert!(k >= 1, "k must be at least 1");
    let ranks = graph.sort_ranks();
    let to_end = distance_to_end(graph);
    if to_end[START].is_infinite() {
        return Vec::new();
    }

    let mut heap = BinaryHeap::new();
    heap.push(Entry {
        bound: to_end[START],
        ranks: vec![ranks[START]],
        path: vec![START],
        cost: 0.0,
    });

    let mut complete: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut pops = 0;
    while let Some(entry) = heap.pop() {
        pops += 1;
        if pops > MAX_POPS {
            break;
        }
        let last = *entry.path.last().expect("paths are non-empty");
        if last == END {
            complete.push((entry.path, entry.cost));
            if complete.len() >= k + SLACK {
                break;
            }
            continue;
        }
        for (next, weight) in graph.successors(last) {
            if to_end[next].is_infinite() || entry.path.contains(&next) {
                continue;
            }
            let cost = entry.cost + weight;
            let mut path = entry.path.clone();
            path.push(next);
            let mut rank_seq = entry.ranks.clone();
            rank_seq.push(ranks[next]);
            heap.push(Entry {
                bound: cost + to_end[next],
                ranks: rank_seq,
                path,
                cost,
            });
        }
    }

    complete.sort_by(|a, b| {
        a.1.total_cmp(&b.1).then_with(|| {
            let ka: Vec<u32> = a.0.iter().map(|&id| ranks[id]).collect();
            let kb: Vec<u32> = b.0.iter().map(|&id| ranks[id]).collect();
            ka.cmp(&kb)
        })
    });
    complete.truncate(k);
    complete
}

/// Dijkstra distances from every node to END (over reversed arcs).
fn distance_to_end(graph: &WordGraph) -> Vec<f64> {
    let n = graph.nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    dist[END] = 0.0;
    let mut heap: BinaryHeap<(std::cmp::Reverse<ordered::OrdF64>, usize)> = BinaryHeap::new();
    heap.push((std::cmp::Reverse(ordered::OrdF64(0.0)), END));
    while let Some((std::cmp::Reverse(ordered::OrdF64(d)), v)) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for (u, w) in graph.predecessors(v) {
            let candidate = d + w;
            if candidate < dist[u] {
                dist[u] = candidate;
                heap.push((std::cmp::Reverse(ordered::OrdF64(candidate)), u));
            }
        }
    }
    dist
}

mod ordered {
    /// Total-ordered f64 for the Dijkstra heap (never NaN here).
    #[derive(PartialEq)]
    pub struct OrdF64(pub f64);

    impl Eq for OrdF64 {}

    impl PartialOrd for OrdF64 {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }

    impl Ord for OrdF64 {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.0.total_cmp(&other.0)
        }
    }
}

/// Enumerate K shortest paths, then keep those with at least `min_words`
/// content tokens and at least one verb. Weight order is preserved.
pub fn k_shortest_paths(
    graph: &WordGraph,
    k: usize,
    min_words: usize,
) -> Vec<CompressionCandidate> {
    assert!(min_words >= 1, "min_words must be at least 1");
    enumerate_k_shortest(graph, k)
        .into_iter()
        .map(|(path, total_weight)| candidate_stats(graph, path, total_weight))
        .filter(|c| c.content_len >= min_words && c.has_verb)
        .collect()
}

fn candidate_stats(graph: &WordGraph, path: Vec<usize>, total_weight: f64) -> CompressionCandidate {
    let mut content_len = 0;
    let mut word_len = 0;
    let mut has_verb = false;
    for &id in &path {
        let node = &graph.nodes[id];
        if node.lower().is_some() {
            word_len += 1;
            if node.is_content() {
                content_len += 1;
            }
            if node.pos() == Some(CoarsePos::Verb) {
                has_verb = true;
            }
        }
    }
    let raw_weight = if content_len > 0 {
        total_weight / content_len as f64
    } else {
        f64::INFINITY
    };
    CompressionCandidate {
        path,
        total_weight,
        raw_weight,
        rerank_score: 0.0,
        content_len,
        word_len,
        has_verb,
    }
}

#[cfg(test)]
mod tests {
    use super::super::word_graph::{build_word_graph, test_support::*};
    use super::*;
    use crate::ingest::Sentence;

    fn graph_of(texts: &[&str]) -> WordGraph {
        let sentences = sentences_from(texts);
        let refs: Vec<&Sentence> = sentences.iter().collect();
        build_word_graph(&refs, &pos_fixture())
    }

    /// Oracle: every simple START->END path by DFS, sorted by
    /// (total weight, node key ranks).
    pub(crate) fn brute_force_paths(graph: &WordGraph) -> Vec<(Vec<usize>, f64)> {
        let ranks = graph.sort_ranks();
        let mut all = Vec::new();
        let mut stack = vec![(vec![START], 0.0f64)];
        while let Some((path, cost)) = stack.pop() {
            let last = *path.last().unwrap();
            if last == END {
                all.push((path, cost));
                continue;
            }
            for (next, w) in graph.successors(last) {
                if !path.contains(&next) {
                    let mut p = path.clone();
                    p.push(next);
                    stack.push((p, cost + w));
                }
            }
        }
        all.sort_by(|a, b| {
            a.1.total_cmp(&b.1).then_with(|| {
                let ka: Vec<u32> = a.0.iter().map(|&id| ranks[id]).collect();
                let kb: Vec<u32> = b.0.iter().map(|&id| ranks[id]).collect();
                ka.cmp(&kb)
            })
        });
        all
    }

    #[test]
    fn single_chain_has_one_path() {
        let graph = graph_of(&["the big cat sat quietly today"]);
        let paths = enumerate_k_shortest(&graph, 100);
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].0.len(), 8); // START + 6 tokens + END
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let graph = graph_of(&["the cat sat", "the cat ran", "a big cat sat"]);
        let got = enumerate_k_shortest(&graph, 100);
        let expected = brute_force_paths(&graph);
        assert_eq!(got.len(), expected.len().min(100));
        for (g, e) in got.iter().zip(&expected) {
            assert_eq!(g.0, e.0);
            assert!((g.1 - e.1).abs() < 1e-12);
        }
    }

    #[test]
    fn weights_non_decreasing() {
        let graph = graph_of(&[
            "the cat sat by a dog",
            "the dog ran by a cat",
            "a big cat ran",
        ]);
        let paths = enumerate_k_shortest(&graph, 100);
        for pair in paths.windows(2) {
            assert!(pair[0].1 <= pair[1].1 + 1e-15);
        }
    }

    #[test]
    fn k_limits_output() {
        let graph = graph_of(&["the cat sat", "the cat ran", "a big cat sat"]);
        let all = enumerate_k_shortest(&graph, 100);
        let two = enumerate_k_shortest(&graph, 2);
        assert_eq!(two.len(), 2.min(all.len()));
        assert_eq!(two[..], all[..two.len()]);
    }

    #[test]
    fn filter_drops_short_and_verbless_paths() {
        // 6 content words with a verb: passes alpha = 5.
        let graph = graph_of(&["big police dogs sat near stray cats"]);
        assert_eq!(k_shortest_paths(&graph, 100, 5).len(), 1);
        assert!(k_shortest_paths(&graph, 100, 14).is_empty());

        // Paths with only 3 content words cannot satisfy alpha = 5.
        let short = graph_of(&["the big cat sat"]);
        assert!(k_shortest_paths(&short, 100, 5).is_empty());

        // No verb anywhere: filtered out.
        let verbless = graph_of(&["big dogs near stray cats yesterday"]);
        assert!(k_shortest_paths(&verbless, 100, 3).is_empty());
    }

    #[test]
    fn content_length_excludes_stopwords_and_punct() {
        let graph = graph_of(&["the big cat sat , by a dog"]);
        let candidates = k_shortest_paths(&graph, 100, 1);
        assert_eq!(candidates.len(), 1);
        // content: big cat sat dog; stopwords the/by/a and comma excluded.
        assert_eq!(candidates[0].content_len, 4);
        assert_eq!(candidates[0].word_len, 8);
        assert!(candidates[0].has_verb);
    }

    #[test]
    fn raw_weight_is_length_normalized() {
        let graph = graph_of(&["big police dogs sat near stray cats"]);
        let c = &k_shortest_paths(&graph, 100, 5)[0];
        assert!((c.raw_weight - c.total_weight / c.content_len as f64).abs() < 1e-15);
    }
}
