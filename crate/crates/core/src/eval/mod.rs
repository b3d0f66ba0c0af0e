//! XQuAD paragraph-retrieval evaluation.
//!
//! Every paragraph of a split becomes one document; every question is run as
//! a query against the paragraphs of its own language, and counts as correct
//! when the top-ranked paragraph is the one it was asked about.

mod evaluate;
mod report;
mod xquad;

pub use evaluate::{
    evaluate, evaluate_with, run_ablation_suite, EvalResult, Evaluation, QuestionOutcome,
};
pub use report::{render_report, ReportFormat, REPORT_HEADER};
pub use xquad::{load_xquad, parse_xquad, xquad_file_name, Paragraph, Question, XquadSplit};
