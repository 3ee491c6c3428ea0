use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use summpip::config::DEFAULT_DOC_SEPARATOR;
use summpip::pipeline::{run_baseline_lead, run_eval, run_pipeline, RunOptions};
use summpip::{PipelineConfig, Preset, ResourcePaths};

#[derive(Parser)]
#[command(
    name = "summpip",
    version,
    about = "Unsupervised multi-document summarization: sentence graphs, spectral clustering, and word-graph compression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a cluster file (one cluster per line, documents joined by
    /// the separator token); writes one summary per line plus a manifest.
    Summarize(SummarizeArgs),
    /// Score a candidate summary file against a reference file with
    /// ROUGE-1/2/SU4.
    Eval(EvalArgs),
    /// Emit the lead-n baseline (first n sentences of each cluster).
    Lead(LeadArgs),
}

/// Resource file overrides; every flag falls back to the data compiled into
/// the library, and every flag can also come from the environment.
#[derive(Args)]
struct ResourceArgs {
    /// Word vectors in word2vec text format ("count dim" header)
    #[arg(long, env = "SUMMPIP_VECTORS")]
    vectors: Option<PathBuf>,
    /// Stopword list, one word per line
    #[arg(long, env = "SUMMPIP_STOPWORDS")]
    stopwords: Option<PathBuf>,
    /// Abbreviation list for the sentence splitter, one entry per line
    #[arg(long, env = "SUMMPIP_ABBREVIATIONS")]
    abbreviations: Option<PathBuf>,
    /// Discourse marker list, one marker per line
    #[arg(long, env = "SUMMPIP_MARKERS")]
    markers: Option<PathBuf>,
    /// Deverbal lexicon: verb<TAB>noun,noun per line
    #[arg(long, env = "SUMMPIP_DEVERBAL")]
    deverbal: Option<PathBuf>,
    /// Entity gazetteer: phrase<TAB>TYPE per line
    #[arg(long, env = "SUMMPIP_GAZETTEER")]
    gazetteer: Option<PathBuf>,
    /// Coarse POS lexicon: word<TAB>VERB|NOUN|ADJ|OTHER per line
    #[arg(long, env = "SUMMPIP_POS_LEXICON")]
    pos_lexicon: Option<PathBuf>,
}

impl ResourceArgs {
    fn into_paths(self) -> ResourcePaths {
        ResourcePaths {
            vectors: self.vectors,
            stopwords: self.stopwords,
            abbreviations: self.abbreviations,
            markers: self.markers,
            deverbal: self.deverbal,
            gazetteer: self.gazetteer,
            pos_lexicon: self.pos_lexicon,
        }
    }
}

#[derive(Args)]
struct SummarizeArgs {
    /// Input cluster file
    input: PathBuf,
    /// Summary output file (one line per cluster)
    #[arg(short, long)]
    output: PathBuf,
    /// Hyperparameter preset: multinews (500/9/5) or duc2004 (1500/7/14)
    #[arg(long)]
    preset: Option<Preset>,
    /// Token budget per concatenated cluster
    #[arg(long)]
    token_budget: Option<usize>,
    /// Number of sentence clusters k
    #[arg(long)]
    num_clusters: Option<usize>,
    /// Minimum content words per compression path (alpha)
    #[arg(long)]
    min_words: Option<usize>,
    /// Cosine threshold for similarity edges
    #[arg(long)]
    sim_threshold: Option<f64>,
    /// Nearest neighbors per deverbal noun
    #[arg(long)]
    neighbor_count: Option<usize>,
    /// Shortest paths enumerated before filtering
    #[arg(long)]
    k_paths: Option<usize>,
    /// Seed for k-means initialization
    #[arg(long)]
    seed: Option<u64>,
    /// Weight edges by cosine similarity instead of 1.0
    #[arg(long)]
    weighted_graph: bool,
    /// Token separating documents within a cluster line
    #[arg(long, default_value = DEFAULT_DOC_SEPARATOR)]
    doc_separator: String,
    /// Manifest path (default: <output>.manifest)
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Worker pool size (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Write per-instance graph and label dumps into this directory
    #[arg(long)]
    debug_dir: Option<PathBuf>,
    #[command(flatten)]
    resources: ResourceArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Candidate summaries, one per line
    candidates: PathBuf,
    /// Reference summaries, one per line
    references: PathBuf,
}

#[derive(Args)]
struct LeadArgs {
    /// Input cluster file
    input: PathBuf,
    /// Summary output file
    #[arg(short, long)]
    output: PathBuf,
    /// Number of leading sentences to keep
    #[arg(short = 'n', long = "sentences", default_value_t = 3)]
    sentences: usize,
    /// Token separating documents within a cluster line
    #[arg(long, default_value = DEFAULT_DOC_SEPARATOR)]
    doc_separator: String,
    #[command(flatten)]
    resources: ResourceArgs,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Summarize(args) => summarize(args),
        Command::Eval(args) => eval(args),
        Command::Lead(args) => lead(args),
    }
}

fn summarize(args: SummarizeArgs) -> anyhow::Result<()> {
    let mut config = match args.preset {
        Some(preset) => PipelineConfig::preset(preset),
        None => PipelineConfig::default(),
    };
    if let Some(v) = args.token_budget {
        config.token_budget = v;
    }
    if let Some(v) = args.num_clusters {
        config.num_clusters = v;
    }
    if let Some(v) = args.min_words {
        config.min_words = v;
    }
    if let Some(v) = args.sim_threshold {
        config.sim_threshold = v;
    }
    if let Some(v) = args.neighbor_count {
        config.neighbor_count = v;
    }
    if let Some(v) = args.k_paths {
        config.k_paths = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    config.weighted_graph = args.weighted_graph;
    config.doc_separator = args.doc_separator;
    config.resources = args.resources.into_paths();

    let manifest = args
        .manifest
        .unwrap_or_else(|| with_suffix(&args.output, ".manifest"));
    let options = RunOptions {
        manifest_path: Some(manifest.clone()),
        workers: args.workers,
        debug_dir: args.debug_dir,
    };
    let report = run_pipeline(&config, &args.input, &args.output, &options)
        .context("summarization run failed")?;
    eprintln!(
        "wrote {} summaries to {} ({} warnings); manifest at {}",
        report.summaries.len(),
        args.output.display(),
        report.warning_count(),
        manifest.display()
    );
    Ok(())
}

fn eval(args: EvalArgs) -> anyhow::Result<()> {
    let report = run_eval(&args.candidates, &args.references).context("evaluation failed")?;
    print!("{}", report.render_table());
    println!();
    print!("{}", report.render_key_values());
    Ok(())
}

fn lead(args: LeadArgs) -> anyhow::Result<()> {
    let count = run_baseline_lead(
        &args.input,
        &args.output,
        args.sentences,
        &args.doc_separator,
        &args.resources.into_paths(),
    )
    .context("lead baseline failed")?;
    eprintln!("wrote {count} lead summaries to {}", args.output.display());
    Ok(())
}

fn with_suffix(path: &std::path::Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}
