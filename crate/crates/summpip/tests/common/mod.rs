//! Shared fixture builders and independent oracles for the integration and
//! acceptance suites. Oracles here must stay independent of the library
//! implementation paths they check.

#![allow(dead_code)]

use summpip::compress::{WordGraph, END, START};
use summpip::graph::{EdgeLabel, EdgeRule, SentenceGraph};
use summpip::ingest::{Ingestor, Sentence};
use summpip::resources::Resources;

pub fn builtin_ingestor() -> Ingestor {
    let res = Resources::builtin();
    Ingestor::new(res.stopwords.clone(), res.abbreviations.clone())
}

pub fn sentences_from(texts: &[&str]) -> Vec<Sentence> {
    let ing = builtin_ingestor();
    texts
        .iter()
        .enumerate()
        .map(|(i, text)| Sentence {
            tokens: ing.tokenize(text),
            text: text.to_string(),
            doc_index: 0,
            sent_index: i,
            global_index: i,
        })
        .collect()
}

pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> SentenceGraph {
    let mut g = SentenceGraph::new(n, false);
    for &(i, j) in edges {
        g.add_edge(
            i,
            j,
            EdgeLabel {
                rule: EdgeRule::Similarity,
                weight: 1.0,
            },
        );
    }
    g
}

/// Union-find connected-component labels for an edge list.
pub fn component_labels(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &(a, b) in edges {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut next = 0;
    let mut seen: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    (0..n)
        .map(|i| {
            let root = find(&mut parent, i);
            *seen.entry(root).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            })
        })
        .collect()
}

/// True when two labelings induce the same partition (equal up to label
/// permutation).
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut fwd = std::collections::HashMap::new();
    let mut bwd = std::collections::HashMap::new();
    for (&x, &y) in a.iter().zip(b) {
        if *fwd.entry(x).or_insert(y) != y || *bwd.entry(y).or_insert(x) != x {
            return false;
        }
    }
    true
}

/// DFS enumeration of every loopless START-to-END path, sorted by
/// (total weight, node sort ranks). Independent of the library's search.
pub fn brute_force_paths(graph: &WordGraph) -> Vec<(Vec<usize>, f64)> {
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

/// Deterministic synthetic news-like corpus: `clusters` lines, each with
/// 2-3 documents of several sentences, using verbs the builtin POS lexicon
/// knows. Returns the file body.
pub fn synthetic_corpus(clusters: usize) -> String {
    let subjects = [
        "police",
        "officials",
        "residents",
        "rescue teams",
        "the company",
        "lawmakers",
        "protesters",
        "investigators",
        "the governor",
        "firefighters",
    ];
    let verbs = [
        "arrested",
        "investigated",
        "announced",
        "evacuated",
        "destroyed",
        "approved",
        "rejected",
        "warned",
        "rescued",
        "criticized",
    ];
    let objects = [
        "a suspect",
        "the plan",
        "several homes",
        "the new policy",
        "the downtown bridge",
        "local schools",
        "the annual budget",
        "two buildings",
        "the proposal",
        "dozens of cars",
    ];
    let tails = [
        "on Friday",
        "after a long chase",
        "near the river",
        "in downtown Chicago",
        "during the storm",
        "late last night",
        "in a statement",
        "across the region",
        "before the vote",
        "without warning",
    ];
    let markers = ["However,", "Meanwhile,", "Furthermore,", "Therefore,"];

    let mut rng = 0x5eed_u64;
    let mut next = move || {
        // xorshift: deterministic and dependency-free.
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };

    let mut lines = Vec::new();
    for _ in 0..clusters {
        let doc_count = 2 + (next() % 2) as usize;
        let mut docs = Vec::new();
        for _ in 0..doc_count {
            let sent_count = 4 + (next() % 4) as usize;
            let mut sentences = Vec::new();
            for s in 0..sent_count {
                let subject = subjects[(next() % subjects.len() as u64) as usize];
                let verb = verbs[(next() % verbs.len() as u64) as usize];
                let object = objects[(next() % objects.len() as u64) as usize];
                let tail = tails[(next() % tails.len() as u64) as usize];
                let mut sentence = format!("{subject} {verb} {object} {tail}.");
                if s > 0 && next() % 4 == 0 {
                    let marker = markers[(next() % markers.len() as u64) as usize];
                    sentence = format!("{marker} {sentence}");
                }
                // Capitalize the first character.
                let mut chars = sentence.chars();
                sentence = match chars.next() {
                    Some(c) => c.to_uppercase().collect::<String>() + chars.as_str(),
                    None => sentence,
                };
                sentences.push(sentence);
            }
            docs.push(sentences.join(" "));
        }
        lines.push(docs.join(" story_separator_special_tag "));
    }
    lines.join("\n") + "\n"
}
