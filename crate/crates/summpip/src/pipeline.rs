//! End-to-end batch runs: ingest -> truncate -> sentence graph -> spectral
//! clustering -> compression, plus the evaluation and lead-baseline harnesses.
//!
//! Clusters are processed by a worker pool; output lines are written in input
//! order regardless of completion order. A failure inside one cluster never
//! aborts the batch: that instance falls back to its first k sentences and
//! the manifest records a warning.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::cluster::{cluster_sentences, dump_assignment, ClusterAssignment};
use crate::compress::{assemble_summary, Summary};
use crate::config::{PipelineConfig, ResourcePaths};
use crate::error::{Error, Result};
use crate::graph::build_sentence_graph;
use crate::ingest::{truncate_cluster, DocumentCluster, Ingestor};
use crate::resources::Resources;
use crate::rouge::{evaluate_corpus, CorpusReport};

/// Options orthogonal to [`PipelineConfig`]: where to write the manifest,
/// worker-pool size, and optional per-instance debug dumps.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub manifest_path: Option<PathBuf>,
    pub workers: Option<usize>,
    pub debug_dir: Option<PathBuf>,
}

/// Per-instance counters reported in the manifest.
#[derive(Debug, Clone, Default)]
pub struct InstanceStats {
    pub sentences: usize,
    pub edges: usize,
    pub clusters: usize,
    pub fallbacks: usize,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, Default)]
struct StageTimings {
    truncate_ms: f64,
    graph_ms: f64,
    cluster_ms: f64,
    compress_ms: f64,
}

/// Everything a finished run exposes to callers and tests.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub summaries: Vec<String>,
    pub stats: Vec<InstanceStats>,
    pub manifest: String,
}

impl RunReport {
    pub fn warning_count(&self) -> usize {
        self.stats.iter().filter(|s| s.warning.is_some()).count()
    }
}

/// A loaded pipeline: immutable resources plus configuration, shareable
/// across threads.
#[derive(Debug)]
pub struct Pipeline {
    config: PipelineConfig,
    resources: Resources,
    ingestor: Ingestor,
}

/// Result of summarizing one document cluster.
#[derive(Debug, Clone)]
pub struct ProcessedCluster {
    pub summary: Summary,
    pub assignment: ClusterAssignment,
    pub truncated: DocumentCluster,
    pub edge_count: usize,
    pub graph_dump: Option<String>,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Result<Self> {
        config.validate()?;
        let resources = Resources::load(&config.resources)?;
        let ingestor = Ingestor::new(resources.stopwords.clone(), resources.abbreviations.clone());
        Ok(Pipeline {
            config,
            resources,
            ingestor,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn resources(&self) -> &Resources {
        &self.resources
    }

    pub fn ingestor(&self) -> &Ingestor {
        &self.ingestor
    }

    pub fn load_clusters(&self, input: &Path) -> Result<Vec<DocumentCluster>> {
        self.ingestor
            .load_cluster_file(input, &self.config.doc_separator)
    }

    /// Summarize one cluster through all stages.
    pub fn process_cluster(
        &self,
        cluster: &DocumentCluster,
        want_debug: bool,
    ) -> Result<ProcessedCluster> {
        self.process_cluster_timed(cluster, want_debug)
            .map(|(p, _)| p)
    }

    fn process_cluster_timed(
        &self,
        cluster: &DocumentCluster,
        want_debug: bool,
    ) -> Result<(ProcessedCluster, StageTimings)> {
        let mut timings = StageTimings::default();
        if cluster.sentences.is_empty() {
            return Err(Error::EmptyCluster);
        }

        let t = Instant::now();
        let truncated = truncate_cluster(cluster, self.config.token_budget);
        timings.truncate_ms = ms_since(t);

        let t = Instant::now();
        let graph = build_sentence_graph(&truncated, &self.resources, &self.config);
        timings.graph_ms = ms_since(t);

        let t = Instant::now();
        let assignment = cluster_sentences(&graph, self.config.num_clusters, self.config.seed)?;
        timings.cluster_ms = ms_since(t);

        let t = Instant::now();
        let summary = assemble_summary(
            &assignment,
            &truncated.sentences,
            &self.resources,
            &self.config,
        );
        timings.compress_ms = ms_since(t);

        let graph_dump = want_debug.then(|| graph.dump_edge_list());
        Ok((
            ProcessedCluster {
                summary,
                assignment,
                edge_count: graph.edge_count(),
                truncated,
                graph_dump,
            },
            timings,
        ))
    }

    /// First-k-sentences summary used when a cluster fails internally.
    fn lead_fallback(&self, cluster: &DocumentCluster) -> String {
        lead_summary(cluster, self.config.num_clusters)
    }
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// First `n` sentences of the cluster (post-split, pre-truncation).
pub fn lead_summary(cluster: &DocumentCluster, n: usize) -> String {
    cluster
        .sentences
        .iter()
        .take(n)
        .map(|s| s.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

struct InstanceOutcome {
    line: String,
    stats: InstanceStats,
    timings: StageTimings,
    graph_dump: Option<String>,
    labels_dump: Option<String>,
}

/// Run the full pipeline over a cluster file, writing one summary line per
/// input cluster plus a key=value manifest.
pub fn run_pipeline(
    config: &PipelineConfig,
    input: &Path,
    output: &Path,
    options: &RunOptions,
) -> Result<RunReport> {
    let pipeline = Pipeline::new(config.clone())?;
    let clusters = pipeline.load_clusters(input)?;
    let want_debug = options.debug_dir.is_some();

    let run = || -> Vec<InstanceOutcome> {
        clusters
            .par_iter()
            .map(|cluster| summarize_instance(&pipeline, cluster, want_debug))
            .collect()
    };
    let outcomes = match options.workers {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?
            .install(run),
        None => run(),
    };

    let summaries: Vec<String> = outcomes.iter().map(|o| o.line.clone()).collect();
    let mut body = summaries.join("\n");
    if !body.is_empty() {
        body.push('\n');
    }
    fs::write(output, body).map_err(|e| Error::Write {
        path: output.to_path_buf(),
        cause: e,
    })?;

    if let Some(dir) = &options.debug_dir {
        fs::create_dir_all(dir).map_err(|e| Error::Write {
            path: dir.clone(),
            cause: e,
        })?;
        for (i, outcome) in outcomes.iter().enumerate() {
            if let Some(dump) = &outcome.graph_dump {
                write_file(&dir.join(format!("instance_{i}.graph.txt")), dump)?;
            }
            if let Some(dump) = &outcome.labels_dump {
                write_file(&dir.join(format!("instance_{i}.labels.txt")), dump)?;
            }
        }
    }

    let manifest = render_manifest(config, &outcomes);
    if let Some(path) = &options.manifest_path {
        write_file(path, &manifest)?;
    }

    Ok(RunReport {
        summaries,
        stats: outcomes.into_iter().map(|o| o.stats).collect(),
        manifest,
    })
}

fn summarize_instance(
    pipeline: &Pipeline,
    cluster: &DocumentCluster,
    want_debug: bool,
) -> InstanceOutcome {
    match pipeline.process_cluster_timed(cluster, want_debug) {
        Ok((processed, timings)) => {
            let stats = InstanceStats {
                sentences: processed.truncated.sentences.len(),
                edges: processed.edge_count,
                clusters: processed.assignment.occupied_clusters(),
                fallbacks: processed
                    .summary
                    .fallback_flags
                    .iter()
                    .filter(|&&f| f)
                    .count(),
                warning: None,
            };
            InstanceOutcome {
                line: sanitize_line(&processed.summary.joined()),
                stats,
                timings,
                labels_dump: want_debug.then(|| dump_assignment(&processed.assignment)),
                graph_dump: processed.graph_dump,
            }
        }
        Err(err) => {
            let line = sanitize_line(&pipeline.lead_fallback(cluster));
            InstanceOutcome {
                line,
                stats: InstanceStats {
                    sentences: cluster.sentences.len(),
                    warning: Some(format!("fell back to lead summary: {err}")),
                    ..InstanceStats::default()
                },
                timings: StageTimings::default(),
                graph_dump: None,
                labels_dump: None,
            }
        }
    }
}

fn sanitize_line(line: &str) -> String {
    line.replace(['\n', '\r'], " ")
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::Write {
        path: path.to_path_buf(),
        cause: e,
    })
}

fn render_manifest(config: &PipelineConfig, outcomes: &[InstanceOutcome]) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k}={v}");
    };
    kv("config.token_budget", config.token_budget.to_string());
    kv("config.num_clusters", config.num_clusters.to_string());
    kv("config.min_words", config.min_words.to_string());
    kv("config.sim_threshold", config.sim_threshold.to_string());
    kv("config.neighbor_count", config.neighbor_count.to_string());
    kv("config.k_paths", config.k_paths.to_string());
    kv("config.seed", config.seed.to_string());
    kv("config.weighted_graph", config.weighted_graph.to_string());
    kv("config.doc_separator", config.doc_separator.clone());
    let path_or_builtin = |p: &Option<PathBuf>| {
        p.as_ref()
            .map_or("builtin".to_string(), |p| p.display().to_string())
    };
    kv(
        "resource.vectors",
        config
            .resources
            .vectors
            .as_ref()
            .map_or("none".to_string(), |p| p.display().to_string()),
    );
    kv(
        "resource.stopwords",
        path_or_builtin(&config.resources.stopwords),
    );
    kv(
        "resource.abbreviations",
        path_or_builtin(&config.resources.abbreviations),
    );
    kv(
        "resource.markers",
        path_or_builtin(&config.resources.markers),
    );
    kv(
        "resource.deverbal",
        path_or_builtin(&config.resources.deverbal),
    );
    kv(
        "resource.gazetteer",
        path_or_builtin(&config.resources.gazetteer),
    );
    kv(
        "resource.pos_lexicon",
        path_or_builtin(&config.resources.pos_lexicon),
    );
    kv("instances", outcomes.len().to_string());
    kv(
        "warnings",
        outcomes
            .iter()
            .filter(|o| o.stats.warning.is_some())
            .count()
            .to_string(),
    );
    let total =
        |pick: fn(&StageTimings) -> f64| -> f64 { outcomes.iter().map(|o| pick(&o.timings)).sum() };
    kv(
        "timing.truncate_ms",
        format!("{:.3}", total(|t| t.truncate_ms)),
    );
    kv("timing.graph_ms", format!("{:.3}", total(|t| t.graph_ms)));
    kv(
        "timing.cluster_ms",
        format!("{:.3}", total(|t| t.cluster_ms)),
    );
    kv(
        "timing.compress_ms",
        format!("{:.3}", total(|t| t.compress_ms)),
    );
    for (i, outcome) in outcomes.iter().enumerate() {
        kv(
            &format!("instance.{i}.sentences"),
            outcome.stats.sentences.to_string(),
        );
        kv(
            &format!("instance.{i}.edges"),
            outcome.stats.edges.to_string(),
        );
        kv(
            &format!("instance.{i}.clusters"),
            outcome.stats.clusters.to_string(),
        );
        kv(
            &format!("instance.{i}.fallbacks"),
            outcome.stats.fallbacks.to_string(),
        );
        if let Some(warning) = &outcome.stats.warning {
            kv(&format!("instance.{i}.warning"), warning.clone());
        }
    }
    out
}

/// Score a candidate file against a reference file, line by line.
pub fn run_eval(candidates_path: &Path, references_path: &Path) -> Result<CorpusReport> {
    let candidates = read_lines(candidates_path)?;
    let references = read_lines(references_path)?;
    evaluate_corpus(&candidates, &references)
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(content.lines().map(str::to_string).collect())
}

/// Lead-n baseline: the first `n` sentences of each cluster, pre-truncation.
pub fn run_baseline_lead(
    input: &Path,
    output: &Path,
    n_sentences: usize,
    doc_separator: &str,
    resource_paths: &ResourcePaths,
) -> Result<usize> {
    assert!(n_sentences >= 1, "lead baseline needs n >= 1");
    let resources = Resources::load(resource_paths)?;
    let ingestor = Ingestor::new(resources.stopwords.clone(), resources.abbreviations.clone());
    let clusters = ingestor.load_cluster_file(input, doc_separator)?;
    let lines: Vec<String> = clusters
        .iter()
        .map(|c| sanitize_line(&lead_summary(c, n_sentences)))
        .collect();
    let mut body = lines.join("\n");
    if !body.is_empty() {
        body.push('\n');
    }
    fs::write(output, body).map_err(|e| Error::Write {
        path: output.to_path_buf(),
        cause: e,
    })?;
    Ok(lines.len())
}
