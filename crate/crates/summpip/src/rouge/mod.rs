//! ROUGE-1, ROUGE-2, and ROUGE-SU4 with clipped-count matching over
//! case-folded, Porter-stemmed tokens.

mod stem;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use stem::porter_stem;

/// Precision / recall / F1 for one metric variant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RougeScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl RougeScore {
    fn from_counts(overlap: usize, candidate_total: usize, reference_total: usize) -> Self {
        let precision = ratio(overlap, candidate_total);
        let recall = ratio(overlap, reference_total);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        RougeScore {
            precision,
            recall,
            f1,
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// ROUGE preprocessing: case-fold, split on non-alphanumeric ASCII, stem.
/// Tokens of length <= 3 are left unstemmed, the reference toolkit's rule.
pub fn rouge_tokens(text: &str) -> Vec<String> {
    let lowered = text.to_lowercase();
    lowered
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| if t.len() > 3 { porter_stem(t) } else { t.to_string() })
        .collect()
}

fn clipped_overlap<T: std::hash::Hash + Eq>(candidate: &[T], reference: &[T]) -> usize {
    let mut counts: HashMap<&T, isize> = HashMap::new();
    for unit in reference {
        *counts.entry(unit).or_insert(0) += 1;
    }
    let mut overlap = 0;
    for unit in candidate {
        if let Some(c) = counts.get_mut(unit) {
            if *c > 0 {
                *c -= 1;
                overlap += 1;
            }
        }
    }
    overlap
}

fn ngrams(tokens: &[String], n: usize) -> Vec<&[String]> {
    if tokens.len() < n {
        return Vec::new();
    }
    tokens.windows(n).collect()
}

/// N-gram co-occurrence score with clipped counts.
pub fn rouge_n(candidate: &str, reference: &str, n: usize) -> RougeScore {
    assert!(n >= 1, "n must be at least 1");
    let cand_tokens = rouge_tokens(candidate);
    let ref_tokens = rouge_tokens(reference);
    let cand = ngrams(&cand_tokens, n);
    let reference = ngrams(&ref_tokens, n);
    let overlap = clipped_overlap(&cand, &reference);
    RougeScore::from_counts(overlap, cand.len(), reference.len())
}

/// SU unit: a unigram or an ordered skip-bigram with at most 4 intervening
/// tokens. Tagged so unigrams never match bigrams.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum SuUnit<'a> {
    Unigram(&'a str),
    SkipBigram(&'a str, &'a str),
}

fn su4_units(tokens: &[String]) -> Vec<SuUnit<'_>> {
    let mut units: Vec<SuUnit> = tokens.iter().map(|t| SuUnit::Unigram(t)).collect();
    for i in 0..tokens.len() {
        for j in (i + 1)..tokens.len().min(i + 6) {
            units.push(SuUnit::SkipBigram(&tokens[i], &tokens[j]));
        }
    }
    units
}

/// Skip-bigram (max gap 4) plus unigram score.
pub fn rouge_su4(candidate: &str, reference: &str) -> RougeScore {
    let cand_tokens = rouge_tokens(candidate);
    let ref_tokens = rouge_tokens(reference);
    let cand = su4_units(&cand_tokens);
    let reference = su4_units(&ref_tokens);
    let overlap = clipped_overlap(&cand, &reference);
    RougeScore::from_counts(overlap, cand.len(), reference.len())
}

/// Scores of one candidate/reference pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct InstanceScores {
    pub rouge1: RougeScore,
    pub rouge2: RougeScore,
    pub rouge_su4: RougeScore,
}

pub fn score_instance(candidate: &str, reference: &str) -> InstanceScores {
    InstanceScores {
        rouge1: rouge_n(candidate, reference, 1),
        rouge2: rouge_n(candidate, reference, 2),
        rouge_su4: rouge_su4(candidate, reference),
    }
}

/// Per-instance scores plus their macro averages.
#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub instances: Vec<InstanceScores>,
    pub rouge1: RougeScore,
    pub rouge2: RougeScore,
    pub rouge_su4: RougeScore,
}

/// Score a parallel corpus of candidate and reference summaries.
pub fn evaluate_corpus(candidates: &[String], references: &[String]) -> Result<CorpusReport> {
    if candidates.len() != references.len() {
        return Err(Error::LineCountMismatch {
            candidates: candidates.len(),
            references: references.len(),
        });
    }
    let instances: Vec<InstanceScores> = candidates
        .par_iter()
        .zip(references.par_iter())
        .map(|(c, r)| score_instance(c, r))
        .collect();
    let rouge1 = macro_average(&instances, |i| i.rouge1);
    let rouge2 = macro_average(&instances, |i| i.rouge2);
    let rouge_su4 = macro_average(&instances, |i| i.rouge_su4);
    Ok(CorpusReport {
        instances,
        rouge1,
        rouge2,
        rouge_su4,
    })
}

fn macro_average(
    instances: &[InstanceScores],
    pick: impl Fn(&InstanceScores) -> RougeScore,
) -> RougeScore {
    if instances.is_empty() {
        return RougeScore::default();
    }
    let n = instances.len() as f64;
    let mut total = RougeScore::default();
    for i in instances {
        let s = pick(i);
        total.precision += s.precision;
        total.recall += s.recall;
        total.f1 += s.f1;
    }
    RougeScore {
        precision: total.precision / n,
        recall: total.recall / n,
        f1: total.f1 / n,
    }
}

impl CorpusReport {
    /// Fixed-width table, values scaled by 100 as conventionally reported.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<10} {:>10} {:>10} {:>10}\n",
            "metric", "precision", "recall", "f1"
        ));
        for (name, score) in [
            ("ROUGE-1", self.rouge1),
            ("ROUGE-2", self.rouge2),
            ("ROUGE-SU4", self.rouge_su4),
        ] {
            out.push_str(&format!(
                "{:<10} {:>10.2} {:>10.2} {:>10.2}\n",
                name,
                score.precision * 100.0,
                score.recall * 100.0,
                score.f1 * 100.0
            ));
        }
        out.push_str(&format!("instances  {:>10}\n", self.instances.len()));
        out
    }

    /// Machine-readable block, raw fractions at 4 decimal places.
    pub fn render_key_values(&self) -> String {
        let mut out = String::new();
        for (key, score) in [
            ("rouge1", self.rouge1),
            ("rouge2", self.rouge2),
            ("rougesu4", self.rouge_su4),
        ] {
            out.push_str(&format!("{key}_p={:.4}\n", score.precision));
            out.push_str(&format!("{key}_r={:.4}\n", score.recall));
            out.push_str(&format!("{key}_f={:.4}\n", score.f1));
        }
        out.push_str(&format!("instances={}\n", self.instances.len()));
        out
    }
}
