//! Word-vector storage, sentence embeddings, and nearest-neighbor queries.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ingest::Sentence;

/// Dense word vectors loaded from word2vec text format. Keys are case-folded;
/// duplicate words keep their first occurrence. Lookups against the
/// [`WordVectorStore::empty`] store always miss, which downstream code treats
/// as all-OOV.
#[derive(Debug, Clone)]
pub struct WordVectorStore {
    dimension: usize,
    words: Vec<String>,
    vectors: Vec<Vec<f32>>,
    index: HashMap<String, usize>,
}

impl WordVectorStore {
    pub fn empty() -> Self {
        WordVectorStore {
            dimension: 0,
            words: Vec::new(),
            vectors: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Parse word2vec text format: a "count dim" header, then one
    /// "word v1 .. vdim" row per line. Errors name the offending line.
    pub fn parse(content: &str, source_name: &str) -> Result<Self> {
        let mut lines = content.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::format(source_name, 1, "missing header line"))?;
        let mut parts = header.split_whitespace();
        let count: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::format(source_name, 1, "header must be 'count dim'"))?;
        let dimension: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::format(source_name, 1, "header must be 'count dim'"))?;
        if dimension == 0 {
            return Err(Error::format(source_name, 1, "dimension must be positive"));
        }

        let mut store = WordVectorStore {
            dimension,
            words: Vec::with_capacity(count),
            vectors: Vec::with_capacity(count),
            index: HashMap::with_capacity(count),
        };
        let mut rows = 0;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let line_no = idx + 1;
            let mut fields = line.split_whitespace();
            let word = fields
                .next()
                .ok_or_else(|| Error::format(source_name, line_no, "empty row"))?;
            let values: Vec<f32> = fields
                .map(|v| {
                    v.parse::<f32>().map_err(|_| {
                        Error::format(source_name, line_no, format!("bad value '{v}'"))
                    })
                })
                .collect::<Result<_>>()?;
            if values.len() != dimension {
                return Err(Error::format(
                    source_name,
                    line_no,
                    format!("expected {dimension} values, found {}", values.len()),
                ));
            }
            rows += 1;
            let key = word.to_lowercase();
            if !store.index.contains_key(&key) {
                store.index.insert(key.clone(), store.words.len());
                store.words.push(key);
                store.vectors.push(values);
            }
        }
        if rows != count {
            return Err(Error::format(
                source_name,
                1,
                format!("header declares {count} rows, file has {rows}"),
            ));
        }
        Ok(store)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&content, &path.display().to_string())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f32]> {
        self.index
            .get(&word.to_lowercase())
            .map(|&i| self.vectors[i].as_slice())
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(&word.to_lowercase())
    }

    /// Mean of the vectors of in-vocabulary, non-punctuation tokens; the zero
    /// vector when every token is OOV. Accumulation runs in vocabulary index
    /// order, so the result is exactly invariant under token reordering.
    pub fn sentence_embedding(&self, sentence: &Sentence) -> Vec<f64> {
        let mut hits: Vec<usize> = sentence
            .tokens
            .iter()
            .filter(|t| !t.is_punct)
            .filter_map(|t| self.index.get(&t.lower).copied())
            .collect();
        hits.sort_unstable();
        let mut sum = vec![0.0f64; self.dimension];
        for &idx in &hits {
            for (acc, &v) in sum.iter_mut().zip(&self.vectors[idx]) {
                *acc += f64::from(v);
            }
        }
        if !hits.is_empty() {
            for acc in &mut sum {
                *acc /= hits.len() as f64;
            }
        }
        sum
    }

    /// The `n` in-vocabulary words most cosine-similar to `word`, excluding
    /// the word itself. Ties break lexicographically; an OOV query yields an
    /// empty list.
    pub fn nearest_words(&self, word: &str, n: usize) -> Vec<String> {
        assert!(n >= 1, "neighbor count must be at least 1");
        let key = word.to_lowercase();
        let Some(query) = self.get(&key) else {
            return Vec::new();
        };
        let query: Vec<f64> = query.iter().map(|&v| f64::from(v)).collect();
        let mut scored: Vec<(f64, &str)> = self
            .words
            .iter()
            .zip(&self.vectors)
            .filter(|(w, _)| w.as_str() != key)
            .map(|(w, vec)| {
                let v: Vec<f64> = vec.iter().map(|&x| f64::from(x)).collect();
                (cosine(&query, &v), w.as_str())
            })
            .collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        scored
            .into_iter()
            .take(n)
            .map(|(_, w)| w.to_string())
            .collect()
    }
}

/// Cosine similarity, defined as 0 when either vector has zero norm.
/// Panics on dimension mismatch.
pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len(), "cosine requires equal dimensions");
    let mut dot = 0.0;
    let mut nu = 0.0;
    let mut nv = 0.0;
    for (&a, &b) in u.iter().zip(v) {
        dot += a * b;
        nu += a * a;
        nv += b * b;
    }
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    dot / (nu.sqrt() * nv.sqrt())
}
