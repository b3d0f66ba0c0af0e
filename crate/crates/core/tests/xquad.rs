use std::path::PathBuf;

use stfidf::eval::{
    evaluate, evaluate_with, load_xquad, render_report, run_ablation_suite, ReportFormat,
    XquadSplit,
};
use stfidf::text::{Pipeline, PipelineConfig};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/xquad")
}

fn english() -> XquadSplit {
    load_xquad(fixture_dir().join("xquad.en.json")).unwrap()
}

#[test]
fn fixture_loads_with_gold_paragraphs() {
    let split = english();
    assert_eq!(split.language, "en");
    assert_eq!(split.paragraphs.len(), 4);
    assert_eq!(split.questions.len(), 7);
    let ids: Vec<&str> = split.paragraphs.iter().map(|p| p.id.as_str()).collect();
    assert_eq!(ids, ["0-0", "0-1", "1-0", "1-1"]);
    for q in &split.questions {
        assert!(ids.contains(&q.paragraph_id.as_str()));
    }
}

#[test]
fn word_pipeline_accuracy_on_fixture() {
    let r = evaluate(&english(), &"word".parse().unwrap()).unwrap();
    assert_eq!((r.correct, r.total), (6, 7));
    assert_eq!(r.accuracy, r.correct as f64 / r.total as f64);

    // "the of and" has nothing left after stop-word removal and counts as wrong
    let stopped = evaluate(&english(), &"word,stop".parse().unwrap()).unwrap();
    assert_eq!((stopped.correct, stopped.total), (6, 7));
}

#[test]
fn recount_and_determinism() {
    let split = english();
    let pipeline = Pipeline::load(&"word,stop,stem".parse().unwrap()).unwrap();
    let a = evaluate_with(&split, &pipeline).unwrap();
    let b = evaluate_with(&split, &pipeline).unwrap();
    assert_eq!(a, b);
    let recount = a.outcomes.iter().filter(|o| o.correct).count();
    assert_eq!(recount, a.result.correct);
    for o in &a.outcomes {
        assert_eq!(o.correct, o.predicted.as_deref() == Some(o.gold.as_str()));
    }
}

#[test]
fn paragraph_order_does_not_change_decisions() {
    let split = english();
    let pipeline = Pipeline::load(&"word,stop".parse().unwrap()).unwrap();
    let base = evaluate_with(&split, &pipeline).unwrap();
    let mut reversed = split.clone();
    reversed.paragraphs.reverse();
    let flipped = evaluate_with(&reversed, &pipeline).unwrap();
    assert_eq!(base.outcomes, flipped.outcomes);
}

#[test]
fn duplicated_whitespace_does_not_change_word_accuracy() {
    let split = english();
    let mut spaced = split.clone();
    for p in &mut spaced.paragraphs {
        p.context = p.context.replace(' ', "   \t ");
    }
    let config: PipelineConfig = "word".parse().unwrap();
    assert_eq!(
        evaluate(&split, &config).unwrap(),
        evaluate(&spaced, &config).unwrap()
    );
}

#[test]
fn ablation_suite_is_config_major() {
    let configs: Vec<PipelineConfig> = ["word", "word,stop"]
        .iter()
        .map(|c| c.parse().unwrap())
        .collect();
    let languages = vec!["en".to_string(), "es".to_string()];
    let results = run_ablation_suite(fixture_dir(), &configs, &languages).unwrap();
    let order: Vec<(String, String)> = results
        .iter()
        .map(|r| (r.pipeline.to_string(), r.language.clone()))
        .collect();
    assert_eq!(
        order,
        [
            ("word", "en"),
            ("word", "es"),
            ("word,stop", "en"),
            ("word,stop", "es")
        ]
        .map(|(p, l)| (p.to_string(), l.to_string()))
    );
    let report = render_report(&results, ReportFormat::Tsv);
    assert_eq!(report.lines().count(), 5);
    assert!(report.starts_with("language\tpipeline\tcorrect\ttotal\taccuracy\n"));
}

#[test]
fn missing_language_file_is_an_error() {
    let configs: Vec<PipelineConfig> = vec!["word".parse().unwrap()];
    let err = run_ablation_suite(fixture_dir(), &configs, &["de".to_string()]).unwrap_err();
    assert!(err.to_string().contains("xquad.de.json"));
}
