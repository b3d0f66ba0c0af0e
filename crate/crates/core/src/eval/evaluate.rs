use std::path::Path;

use rayon::prelude::*;

use super::xquad::{load_xquad, xquad_file_name, XquadSplit};
use crate::index::Index;
use crate::text::{Pipeline, PipelineConfig};
use crate::{Error, Result};

/// Top-1 accuracy of one pipeline on one language.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub language: String,
    pub pipeline: PipelineConfig,
    pub correct: usize,
    pub total: usize,
    pub accuracy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuestionOutcome {
    pub question_id: String,
    pub gold: String,
    /// Top-ranked paragraph, or `None` when the query shares no token with
    /// any paragraph.
    pub predicted: Option<String>,
    pub correct: bool,
}

/// An [`EvalResult`] together with the decision for every question, in
/// question order.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub result: EvalResult,
    pub outcomes: Vec<QuestionOutcome>,
}

/// Loads the config's resources and evaluates it on `split`.
pub fn evaluate(split: &XquadSplit, config: &PipelineConfig) -> Result<EvalResult> {
    let pipeline = Pipeline::load(config)?;
    Ok(evaluate_with(split, &pipeline)?.result)
}

/// Indexes every paragraph of `split` and ranks each question against them.
///
/// Questions run in parallel on the current rayon pool; the outcome does not
/// depend on scheduling.
pub fn evaluate_with(split: &XquadSplit, pipeline: &Pipeline) -> Result<Evaluation> {
    let docs: Vec<_> = split
        .paragraphs
        .par_iter()
        .map(|p| (p.id.clone(), pipeline.run(&p.context)))
        .collect();
    let index = Index::build(docs)?;
    let outcomes: Vec<QuestionOutcome> = split
        .questions
        .par_iter()
        .map(|q| {
            let predicted = index
                .query(&pipeline.run(&q.text), 1)
                .into_iter()
                .next()
                .map(|hit| hit.doc_id);
            QuestionOutcome {
                question_id: q.id.clone(),
                gold: q.paragraph_id.clone(),
                correct: predicted.as_deref() == Some(q.paragraph_id.as_str()),
                predicted,
            }
        })
        .collect();
    let correct = outcomes.iter().filter(|o| o.correct).count();
    let total = outcomes.len();
    let accuracy = if total == 0 {
        0.0
    } else {
        correct as f64 / total as f64
    };
    Ok(Evaluation {
        result: EvalResult {
            language: split.language.clone(),
            pipeline: pipeline.config().clone(),
            correct,
            total,
            accuracy,
        },
        outcomes,
    })
}

/// Evaluates every config on every language, config-major, reading
/// `xquad.<lang>.json` files from `dataset_dir`.
pub fn run_ablation_suite(
    dataset_dir: impl AsRef<Path>,
    configs: &[PipelineConfig],
    languages: &[String],
) -> Result<Vec<EvalResult>> {
    if configs.is_empty() {
        return Ok(Vec::new());
    }
    let dir = dataset_dir.as_ref();
    let mut splits = Vec::with_capacity(languages.len());
    for language in languages {
        let path = dir.join(xquad_file_name(language));
        if !path.is_file() {
            return Err(Error::InvalidInput(format!(
                "missing XQuAD file {} for language {language}",
                path.display()
            )));
        }
        let mut split = load_xquad(&path)?;
        split.language = language.clone();
        splits.push(split);
    }
    let mut results = Vec::with_capacity(configs.len() * splits.len());
    for config in configs {
        let pipeline = Pipeline::load(config)?;
        for split in &splits {
            results.push(evaluate_with(split, &pipeline)?.result);
        }
    }
    Ok(results)
}
