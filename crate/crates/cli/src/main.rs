//! `stfidf`: train subword models, build and query indexes, and run the
//! XQuAD retrieval benchmark.
//!
//! Exit status is 0 on success, 1 for usage errors and 2 when input data or
//! a model cannot be used.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stfidf::eval::ReportFormat;

#[derive(Debug, Parser)]
#[command(
    name = "stfidf",
    version,
    about = "Subword TF-IDF retrieval and XQuAD evaluation"
)]
struct Cli {
    /// Worker threads for indexing and evaluation (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Learn a BPE model from temperature-sampled multilingual text.
    TrainSubword(TrainArgs),
    /// Convert an externally trained piece list into a model file.
    ImportVocab(ImportArgs),
    /// Index a document collection under a pipeline.
    BuildIndex(BuildArgs),
    /// Rank the documents of an index against a query.
    Query(QueryArgs),
    /// Measure top-1 paragraph retrieval accuracy on XQuAD files.
    Evaluate(EvalArgs),
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Monolingual corpus as `lang=path`, one line per sample unit. Repeatable.
    #[arg(long = "corpus", value_name = "LANG=PATH")]
    corpora: Vec<String>,
    /// Use the paragraph contexts of `xquad.<lang>.json` files as corpora.
    #[arg(long, conflicts_with = "corpora")]
    xquad_dir: Option<PathBuf>,
    /// Languages to read from `--xquad-dir` (default: all 12 XQuAD languages).
    #[arg(long, value_delimiter = ',', requires = "xquad_dir")]
    languages: Vec<String>,
    #[arg(long, default_value_t = 8000)]
    vocab_size: usize,
    /// Fraction of character occurrences the alphabet must cover, in (0, 1].
    #[arg(long, default_value_t = 0.9995)]
    coverage: f64,
    /// Sampling temperature, at least 1.
    #[arg(long, default_value_t = 5.0)]
    temperature: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lines to draw (default: the total line count of all corpora).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct ImportArgs {
    /// One piece per line; a tab-separated score column is ignored.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct PipelineArgs {
    /// Stages, e.g. `word`, `word,stop,stem` or `subword`.
    #[arg(long, default_value = "word")]
    pipeline: String,
    /// Subword model file, required by the `subword` stage.
    #[arg(long)]
    model: Option<PathBuf>,
    /// `english` or a path to a stop-word file.
    #[arg(long, default_value = "english")]
    stop_list: String,
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Index the paragraphs of an XQuAD file.
    #[arg(long, conflicts_with = "docs", required_unless_present = "docs")]
    xquad: Option<PathBuf>,
    /// Index a `doc_id<TAB>text` file.
    #[arg(long)]
    docs: Option<PathBuf>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    text: String,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// Overrides the subword model path stored in the index.
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// An XQuAD file. Repeatable.
    #[arg(
        long,
        conflicts_with = "data_dir",
        required_unless_present = "data_dir"
    )]
    data: Vec<PathBuf>,
    /// Directory holding `xquad.<lang>.json` files.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Languages to evaluate from `--data-dir` (default: all 12).
    #[arg(long, value_delimiter = ',', requires = "data_dir")]
    languages: Vec<String>,
    /// Pipeline to evaluate. Repeatable; results are config-major.
    #[arg(long = "pipeline", default_value = "word")]
    pipelines: Vec<String>,
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, default_value = "english")]
    stop_list: String,
    #[arg(long, default_value = "tsv", value_parser = ["tsv", "table"])]
    report_format: String,
}

impl EvalArgs {
    fn report_format(&self) -> ReportFormat {
        self.report_format.parse().expect("restricted by clap")
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
