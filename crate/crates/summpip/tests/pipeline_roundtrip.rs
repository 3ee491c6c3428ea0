//! File-level integration tests for batch runs, the manifest, the lead
//! baseline, and the evaluation harness.

mod common;

use std::fs;
use std::path::Path;

use common::synthetic_corpus;
use summpip::pipeline::{run_baseline_lead, run_eval, run_pipeline, RunOptions};
use summpip::{PipelineConfig, ResourcePaths};

fn write(path: &Path, content: &str) {
    fs::write(path, content).expect("write fixture");
}

#[test]
fn run_emits_one_line_per_cluster_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.txt");
    write(&input, &synthetic_corpus(5));
    let output = dir.path().join("out.txt");

    let config = PipelineConfig {
        num_clusters: 3,
        ..PipelineConfig::default()
    };
    let report = run_pipeline(&config, &input, &output, &RunOptions::default()).unwrap();
    assert_eq!(report.summaries.len(), 5);
    assert_eq!(report.warning_count(), 0);

    let written = fs::read_to_string(&output).unwrap();
    let lines: Vec<&str> = written.lines().collect();
    assert_eq!(lines.len(), 5);
    for (line, summary) in lines.iter().zip(&report.summaries) {
        assert_eq!(line, summary);
        assert!(!line.is_empty());
    }
}

#[test]
fn manifest_records_config_and_per_instance_counts() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.txt");
    write(&input, &synthetic_corpus(3));
    let output = dir.path().join("out.txt");
    let manifest_path = dir.path().join("run.manifest");

    let config = PipelineConfig {
        num_clusters: 4,
        ..PipelineConfig::default()
    };
    let options = RunOptions {
        manifest_path: Some(manifest_path.clone()),
        ..RunOptions::default()
    };
    let report = run_pipeline(&config, &input, &output, &options).unwrap();

    let manifest = fs::read_to_string(&manifest_path).unwrap();
    assert_eq!(manifest, report.manifest);
    assert!(manifest.contains("config.num_clusters=4"));
    assert!(manifest.contains("config.seed=42"));
    assert!(manifest.contains("instances=3"));
    for (i, stats) in report.stats.iter().enumerate() {
        assert!(manifest.contains(&format!("instance.{i}.sentences={}", stats.sentences)));
        assert!(manifest.contains(&format!("instance.{i}.clusters={}", stats.clusters)));
        // Occupied clusters never exceed k and never exceed the sentence count.
        assert!(stats.clusters <= config.num_clusters.min(stats.sentences));
        assert!(stats.clusters >= 1);
    }
}

#[test]
fn degenerate_cluster_falls_back_with_warning_not_abort() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.txt");
    // Second line contains only separators: a cluster with no documents.
    let body = format!(
        "{}story_separator_special_tag story_separator_special_tag\n{}",
        "Police arrested a suspect on Friday. The case continues. story_separator_special_tag Officials spoke today.\n",
        "Storms destroyed homes. Rescue teams evacuated residents.\n"
    );
    write(&input, &body);
    let output = dir.path().join("out.txt");

    let report = run_pipeline(
        &PipelineConfig::default(),
        &input,
        &output,
        &RunOptions::default(),
    )
    .unwrap();
    assert_eq!(report.summaries.len(), 3);
    assert_eq!(report.warning_count(), 1);
    assert!(report.stats[1]
        .warning
        .as_deref()
        .unwrap_or("")
        .contains("lead"));
    // Output still has exactly one line per cluster (the fallback line is empty).
    let written = fs::read_to_string(&output).unwrap();
    assert_eq!(written.lines().count(), 3);
}

#[test]
fn debug_dumps_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.txt");
    write(&input, &synthetic_corpus(2));
    let output = dir.path().join("out.txt");
    let debug_dir = dir.path().join("debug");

    let config = PipelineConfig {
        num_clusters: 3,
        ..PipelineConfig::default()
    };
    let options = RunOptions {
        debug_dir: Some(debug_dir.clone()),
        ..RunOptions::default()
    };
    run_pipeline(&config, &input, &output, &options).unwrap();

    for i in 0..2 {
        let graph = fs::read_to_string(debug_dir.join(format!("instance_{i}.graph.txt"))).unwrap();
        for line in graph.lines() {
            // "i j RULE[,RULE...] weight"
            let fields: Vec<&str> = line.split(' ').collect();
            assert_eq!(fields.len(), 4, "bad edge line: {line}");
            let a: usize = fields[0].parse().unwrap();
            let b: usize = fields[1].parse().unwrap();
            assert!(a < b);
            assert!(fields[3].parse::<f64>().unwrap() > 0.0);
        }
        let labels =
            fs::read_to_string(debug_dir.join(format!("instance_{i}.labels.txt"))).unwrap();
        for (idx, line) in labels.lines().enumerate() {
            let (g, _) = line.split_once('\t').expect("tab-separated");
            assert_eq!(g.parse::<usize>().unwrap(), idx);
        }
    }
}

#[test]
fn worker_pool_size_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.txt");
    write(&input, &synthetic_corpus(4));
    let config = PipelineConfig {
        num_clusters: 3,
        ..PipelineConfig::default()
    };

    let out1 = dir.path().join("out1.txt");
    let out2 = dir.path().join("out2.txt");
    let one = RunOptions {
        workers: Some(1),
        ..RunOptions::default()
    };
    let four = RunOptions {
        workers: Some(4),
        ..RunOptions::default()
    };
    run_pipeline(&config, &input, &out1, &one).unwrap();
    run_pipeline(&config, &input, &out2, &four).unwrap();
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());
}

#[test]
fn vector_file_enables_similarity_edges() {
    let dir = tempfile::tempdir().unwrap();
    let vectors = dir.path().join("vectors.txt");
    write(
        &vectors,
        "6 3\nstorms 1 0 0\nhit 0.9 0.1 0\ncoast 0.8 0.2 0\ndestruction 0 1 0\nruin 0.05 0.99 0\nhomes 0 0 1\n",
    );
    let input = dir.path().join("input.txt");
    // Two near-duplicate sentences (cosine 1 on shared vocabulary) plus a
    // deverbal pair whose noun form is reachable via neighbor expansion.
    write(
        &input,
        "Storms hit the coast. Storms hit the coast again. Rebels destroyed a bridge. The ruin shocked everyone.\n",
    );

    let mut config = PipelineConfig::default();
    config.resources.vectors = Some(vectors);
    config.num_clusters = 2;
    let output = dir.path().join("out.txt");
    let with_vectors = run_pipeline(&config, &input, &output, &RunOptions::default()).unwrap();

    let mut without = config.clone();
    without.resources.vectors = None;
    let output2 = dir.path().join("out2.txt");
    let plain = run_pipeline(&without, &input, &output2, &RunOptions::default()).unwrap();

    assert!(
        with_vectors.stats[0].edges > plain.stats[0].edges,
        "vectors should add similarity/deverbal edges ({} vs {})",
        with_vectors.stats[0].edges,
        plain.stats[0].edges
    );
}

#[test]
fn empty_input_file_gives_empty_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.txt");
    write(&input, "");
    let output = dir.path().join("out.txt");
    let report = run_pipeline(
        &PipelineConfig::default(),
        &input,
        &output,
        &RunOptions::default(),
    )
    .unwrap();
    assert!(report.summaries.is_empty());
    assert_eq!(fs::read_to_string(&output).unwrap(), "");
}

#[test]
fn lead_baseline_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("input.txt");
    write(
        &input,
        "One first. Two second. Three third. Four fourth.\nOnly one. And two.\n",
    );
    let output = dir.path().join("lead.txt");
    let count = run_baseline_lead(
        &input,
        &output,
        3,
        "story_separator_special_tag",
        &ResourcePaths::default(),
    )
    .unwrap();
    assert_eq!(count, 2);
    let lines: Vec<String> = fs::read_to_string(&output)
        .unwrap()
        .lines()
        .map(str::to_string)
        .collect();
    assert_eq!(lines[0], "One first. Two second. Three third.");
    // Fewer sentences than n: emit all of them.
    assert_eq!(lines[1], "Only one. And two.");
}

#[test]
fn eval_on_identical_files_scores_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cands.txt");
    write(&path, "the cat sat on the mat\nstorms hit the coast hard\n");
    let report = run_eval(&path, &path).unwrap();
    assert!((report.rouge1.f1 - 1.0).abs() < 1e-12);
    assert!((report.rouge2.f1 - 1.0).abs() < 1e-12);
    assert!((report.rouge_su4.f1 - 1.0).abs() < 1e-12);
}

#[test]
fn eval_line_count_mismatch_is_error() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    write(&a, "one\n");
    write(&b, "one\ntwo\n");
    assert!(run_eval(&a, &b).is_err());
}
