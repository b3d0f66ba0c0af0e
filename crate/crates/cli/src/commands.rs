use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use stfidf::eval::{
    evaluate_with, load_xquad, render_report, run_ablation_suite, xquad_file_name, EvalResult,
};
use stfidf::index::{load_index, save_index, Index};
use stfidf::languages::{is_known_language, XQUAD_LANGUAGES};
use stfidf::subword::{
    compute_sampling_weights, import_external_vocab, sample_training_corpus, save_model, train_bpe,
    CorpusSource, LanguageStats,
};
use stfidf::text::{Pipeline, PipelineConfig, Stage};
use stfidf::TokenSequence;

use crate::{BuildArgs, Cli, Command, EvalArgs, ImportArgs, PipelineArgs, QueryArgs, TrainArgs};

const META_PIPELINE: &str = "pipeline";
const META_STOP_LIST: &str = "stop_list";
const META_MODEL: &str = "model";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}\n\nFor more information, try '--help'."),
            CliError::Data(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Data(e)
    }
}

impl From<stfidf::Error> for CliError {
    fn from(e: stfidf::Error) -> Self {
        CliError::Data(e.into())
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| anyhow!("cannot start {n} worker threads: {e}"))?;
    }
    match cli.command {
        Command::TrainSubword(args) => train(args),
        Command::ImportVocab(args) => import(args),
        Command::BuildIndex(args) => build(args),
        Command::Query(args) => query(args),
        Command::Evaluate(args) => eval(args),
    }
}

fn check_languages(languages: &[String]) -> Result<Vec<String>> {
    if languages.is_empty() {
        return Ok(XQUAD_LANGUAGES.iter().map(|l| l.to_string()).collect());
    }
    match languages.iter().find(|l| !is_known_language(l)) {
        Some(bad) => Err(usage(format!("unknown language code {bad:?}"))),
        None => Ok(languages.to_vec()),
    }
}

fn pipeline_config(spec: &str, model: Option<&Path>, stop_list: &str) -> Result<PipelineConfig> {
    let mut config: PipelineConfig = spec
        .parse()
        .map_err(|e: stfidf::Error| usage(e.to_string()))?;
    config = config.with_stop_list(stop_list);
    if config.has_stage(Stage::Subword) {
        let model = model.ok_or_else(|| usage(format!("pipeline {config} needs --model")))?;
        config = config.with_subword_model(model);
    }
    Ok(config)
}

fn load_pipeline(config: &PipelineConfig) -> Result<Pipeline> {
    Ok(Pipeline::load(config).with_context(|| format!("cannot load pipeline {config}"))?)
}

fn xquad_corpus(path: &Path) -> Result<String> {
    let split = load_xquad(path)?;
    let lines: Vec<String> = split
        .paragraphs
        .iter()
        .map(|p| p.context.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    Ok(lines.join("\n"))
}

fn train(args: TrainArgs) -> Result<()> {
    if !(args.coverage > 0.0 && args.coverage <= 1.0) {
        return Err(usage(format!(
            "--coverage must be in (0, 1], got {}",
            args.coverage
        )));
    }
    if !(args.temperature >= 1.0 && args.temperature.is_finite()) {
        return Err(usage(format!(
            "--temperature must be at least 1, got {}",
            args.temperature
        )));
    }
    if args.vocab_size == 0 {
        return Err(usage("--vocab-size must be positive"));
    }

    let mut texts: Vec<(String, String)> = Vec::new();
    if let Some(dir) = &args.xquad_dir {
        for language in check_languages(&args.languages)? {
            let text = xquad_corpus(&dir.join(xquad_file_name(&language)))?;
            texts.push((language, text));
        }
    } else {
        if args.corpora.is_empty() {
            return Err(usage("give at least one --corpus LANG=PATH or --xquad-dir"));
        }
        for spec in &args.corpora {
            let (language, path) = spec
                .split_once('=')
                .ok_or_else(|| usage(format!("--corpus expects LANG=PATH, got {spec:?}")))?;
            check_languages(&[language.to_string()])?;
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read corpus for language {language} ({path})"))?;
            texts.push((language.to_string(), text));
        }
    }

    let stats: Vec<LanguageStats> = texts
        .iter()
        .map(|(l, t)| LanguageStats::new(l.clone(), t.len() as u64))
        .collect();
    let weights = compute_sampling_weights(&stats, args.temperature)?;
    let budget = match args.budget {
        Some(b) => b as usize,
        None => texts
            .iter()
            .map(|(_, t)| t.lines().filter(|l| !l.trim().is_empty()).count())
            .sum::<usize>()
            .max(1),
    };
    let sources: Vec<(String, CorpusSource)> = texts
        .into_iter()
        .map(|(l, t)| (l, CorpusSource::Text(t)))
        .collect();
    let corpus = sample_training_corpus(&sources, &weights, budget, args.seed)?;
    let model = train_bpe(&corpus, args.vocab_size, args.coverage)?;
    save_model(&model, &args.output)?;
    for (language, p) in weights.iter() {
        println!("weight\t{language}\t{p:.6}");
    }
    println!(
        "model\t{}\tpieces={}\tmerges={}\talphabet={}",
        args.output.display(),
        model.num_pieces(),
        model.merges().len(),
        model.alphabet().len()
    );
    Ok(())
}

fn import(args: ImportArgs) -> Result<()> {
    let model = import_external_vocab(&args.input)?;
    save_model(&model, &args.output)?;
    println!(
        "model\t{}\tpieces={}",
        args.output.display(),
        model.num_pieces()
    );
    Ok(())
}

fn read_docs(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read documents ({})", path.display()))?;
    let mut docs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (id, body) = line.split_once('\t').ok_or_else(|| {
            anyhow!(
                "{}: line {}: expected doc_id<TAB>text",
                path.display(),
                n + 1
            )
        })?;
        docs.push((id.to_string(), body.to_string()));
    }
    Ok(docs)
}

fn build(args: BuildArgs) -> Result<()> {
    let PipelineArgs {
        pipeline,
        model,
        stop_list,
    } = &args.pipeline;
    let config = pipeline_config(pipeline, model.as_deref(), stop_list)?;
    let pipeline = load_pipeline(&config)?;
    let docs: Vec<(String, String)> = match (&args.xquad, &args.docs) {
        (Some(path), _) => load_xquad(path)?
            .paragraphs
            .into_iter()
            .map(|p| (p.id, p.context))
            .collect(),
        (None, Some(path)) => read_docs(path)?,
        (None, None) => return Err(usage("give --xquad or --docs")),
    };
    let tokenized: Vec<(String, TokenSequence)> = {
        use rayon::prelude::*;
        docs.into_par_iter()
            .map(|(id, text)| (id, pipeline.run(&text)))
            .collect()
    };
    let mut index = Index::build(tokenized)?
        .with_metadata(META_PIPELINE, config.to_string())
        .with_metadata(META_STOP_LIST, config.stop_list_id());
    if let Some(path) = config.subword_model_path() {
        index = index.with_metadata(META_MODEL, path.display().to_string());
    }
    save_index(&index, &args.output)?;
    println!(
        "index\t{}\tdocs={}\ttokens={}",
        args.output.display(),
        index.num_docs(),
        index.vocabulary().len()
    );
    Ok(())
}

fn query(args: QueryArgs) -> Result<()> {
    let index = load_index(&args.index)?;
    let meta = index.metadata();
    let spec = meta
        .get(META_PIPELINE)
        .ok_or_else(|| anyhow!("index {} records no pipeline", args.index.display()))?;
    let stop_list = meta
        .get(META_STOP_LIST)
        .map(String::as_str)
        .unwrap_or("english");
    let model = args
        .model
        .clone()
        .or_else(|| meta.get(META_MODEL).map(PathBuf::from));
    let config = pipeline_config(spec, model.as_deref(), stop_list).map_err(|e| {
        anyhow!(
            "index {} records an unusable pipeline: {e}",
            args.index.display()
        )
    })?;
    let pipeline = load_pipeline(&config)?;
    for hit in index.query(&pipeline.run(&args.text), args.k as usize) {
        println!("{}\t{:.6}", hit.doc_id, hit.score);
    }
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let configs = args
        .pipelines
        .iter()
        .map(|p| pipeline_config(p, args.model.as_deref(), &args.stop_list))
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<EvalResult> = if let Some(dir) = &args.data_dir {
        let languages = check_languages(&args.languages)?;
        run_ablation_suite(dir, &configs, &languages)?
    } else {
        let splits = args
            .data
            .iter()
            .map(load_xquad)
            .collect::<stfidf::Result<Vec<_>>>()?;
        let mut results = Vec::new();
        for config in &configs {
            let pipeline = load_pipeline(config)?;
            for split in &splits {
                results.push(evaluate_with(split, &pipeline)?.result);
            }
        }
        results
    };
    print!("{}", render_report(&results, args.report_format()));
    Ok(())
}
