use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use crate::subword::{load_model, BpeModel};
use crate::text::{porter_stem, remove_stop_words, word_tokenize, StopList, ENGLISH_STOP_LIST_ID};
use crate::{Error, Result, TokenSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Word,
    Stop,
    Stem,
    Subword,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Word => "word",
            Stage::Stop => "stop",
            Stage::Stem => "stem",
            Stage::Subword => "subword",
        }
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "word" => Ok(Stage::Word),
            "stop" => Ok(Stage::Stop),
            "stem" => Ok(Stage::Stem),
            "subword" => Ok(Stage::Subword),
            other => Err(Error::InvalidPipeline(format!(
                "unknown stage {other:?} (expected word, stop, stem or subword)"
            ))),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered list of preprocessing stages plus the resources they need.
///
/// Written on the command line as `word,stop,stem,subword` (`>` is accepted
/// as a separator too).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    stages: Vec<Stage>,
    stop_list_id: String,
    subword_model_path: Option<PathBuf>,
}

impl PipelineConfig {
    /// Builds a config from stages, checking the ordering rules.
    ///
    /// The subword model path is not required here; see [`Self::validate`].
    pub fn new(stages: Vec<Stage>) -> Result<Self> {
        check_stage_order(&stages)?;
        Ok(PipelineConfig {
            stages,
            stop_list_id: ENGLISH_STOP_LIST_ID.to_string(),
            subword_model_path: None,
        })
    }

    pub fn with_stop_list(mut self, stop_list_id: impl Into<String>) -> Self {
        self.stop_list_id = stop_list_id.into();
        self
    }

    pub fn with_subword_model(mut self, path: impl Into<PathBuf>) -> Self {
        self.subword_model_path = Some(path.into());
        self
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stop_list_id(&self) -> &str {
        &self.stop_list_id
    }

    pub fn subword_model_path(&self) -> Option<&Path> {
        self.subword_model_path.as_deref()
    }

    pub fn has_stage(&self, stage: Stage) -> bool {
        self.stages.contains(&stage)
    }

    /// Full check: stage order, and a model path iff a subword stage exists.
    pub fn validate(&self) -> Result<()> {
        check_stage_order(&self.stages)?;
        match (self.has_stage(Stage::Subword), &self.subword_model_path) {
            (true, None) => Err(Error::Config(
                "the subword stage requires a subword model path".into(),
            )),
            (false, Some(_)) => Err(Error::Config(
                "a subword model was given but the pipeline has no subword stage".into(),
            )),
            _ => Ok(()),
        }
    }
}

fn check_stage_order(stages: &[Stage]) -> Result<()> {
    if stages.is_empty() {
        return Err(Error::InvalidPipeline("pipeline has no stages".into()));
    }
    for (i, stage) in stages.iter().enumerate() {
        if stages[..i].contains(stage) {
            return Err(Error::InvalidPipeline(format!(
                "stage {stage} appears twice"
            )));
        }
        match stage {
            Stage::Word if i != 0 => {
                return Err(Error::InvalidPipeline(
                    "word must be the first stage".into(),
                ))
            }
            Stage::Subword if i != stages.len() - 1 => {
                return Err(Error::InvalidPipeline(
                    "subword must be the last stage".into(),
                ))
            }
            Stage::Stop | Stage::Stem if !stages[..i].contains(&Stage::Word) => {
                return Err(Error::InvalidPipeline(format!(
                    "{stage} requires an earlier word stage"
                )))
            }
            _ => {}
        }
    }
    Ok(())
}

impl FromStr for PipelineConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let stages = s
            .split([',', '>'])
            .map(str::trim)
            .filter(|part| !part.is_empty())
            .map(Stage::from_str)
            .collect::<Result<Vec<_>>>()?;
        PipelineConfig::new(stages)
    }
}

impl fmt::Display for PipelineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, stage) in self.stages.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(stage.name())?;
        }
        Ok(())
    }
}

/// A config with its resources loaded, ready to run on text.
///
/// Immutable once built, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct Pipeline {
    config: PipelineConfig,
    stops: Option<StopList>,
    model: Option<Arc<BpeModel>>,
}

impl Pipeline {
    /// Loads the stop list and subword model the config refers to.
    pub fn load(config: &PipelineConfig) -> Result<Self> {
        config.validate()?;
        let model = match config.subword_model_path() {
            Some(path) => Some(Arc::new(load_model(path)?)),
            None => None,
        };
        Self::assemble(config, model)
    }

    /// Uses an already loaded model instead of the config's model path.
    pub fn with_model(config: &PipelineConfig, model: Arc<BpeModel>) -> Result<Self> {
        check_stage_order(config.stages())?;
        let model = config.has_stage(Stage::Subword).then_some(model);
        Self::assemble(config, model)
    }

    fn assemble(config: &PipelineConfig, model: Option<Arc<BpeModel>>) -> Result<Self> {
        let stops = if config.has_stage(Stage::Stop) {
            Some(StopList::resolve(config.stop_list_id())?)
        } else {
            None
        };
        if config.has_stage(Stage::Subword) && model.is_none() {
            return Err(Error::Config("the subword stage requires a model".into()));
        }
        Ok(Pipeline {
            config: config.clone(),
            stops,
            model,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn model(&self) -> Option<&BpeModel> {
        self.model.as_deref()
    }

    /// Applies every stage in order.
    ///
    /// Word-level output is re-joined with single spaces before a trailing
    /// subword stage; a subword-only pipeline encodes the raw text.
    pub fn run(&self, text: &str) -> TokenSequence {
        let mut tokens: Option<TokenSequence> = None;
        for stage in self.config.stages() {
            tokens = Some(match stage {
                Stage::Word => word_tokenize(text),
                Stage::Stop => {
                    let stops = self.stops.as_ref().expect("stop list loaded");
                    remove_stop_words(tokens.take().unwrap_or_default(), stops)
                }
                Stage::Stem => tokens
                    .take()
                    .unwrap_or_default()
                    .iter()
                    .map(|t| porter_stem(t))
                    .collect(),
                Stage::Subword => {
                    let model = self.model.as_ref().expect("subword model loaded");
                    let input = match tokens.take() {
                        Some(words) => words.join(" "),
                        None => text.to_string(),
                    };
                    model.encode(&input).into()
                }
            });
        }
        tokens.unwrap_or_default()
    }
}

/// Loads the config's resources and runs it once on `text`.
pub fn run_pipeline(config: &PipelineConfig, text: &str) -> Result<TokenSequence> {
    Ok(Pipeline::load(config)?.run(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(s: &str) -> PipelineConfig {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_displays() {
        let c = config("word,stop,stem,subword");
        assert_eq!(
            c.stages(),
            [Stage::Word, Stage::Stop, Stage::Stem, Stage::Subword]
        );
        assert_eq!(c.to_string(), "word,stop,stem,subword");
        assert_eq!(config("word > stem").to_string(), "word,stem");
        assert_eq!(config("subword").stages(), [Stage::Subword]);
    }

    #[test]
    fn rejects_bad_orderings() {
        for bad in [
            "",
            "stop",
            "stem,word",
            "word,subword,stem",
            "word,word",
            "stop,word",
            "bogus",
        ] {
            assert!(
                bad.parse::<PipelineConfig>().is_err(),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn subword_stage_needs_a_model_path() {
        let c = config("word,subword");
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        assert!(c.clone().with_subword_model("m.bpe").validate().is_ok());
        assert!(config("word")
            .with_subword_model("m.bpe")
            .validate()
            .is_err());
    }

    #[test]
    fn missing_model_file_is_a_config_error_path() {
        let c = config("subword").with_subword_model("/nonexistent/model.bpe");
        assert!(run_pipeline(&c, "text").is_err());
    }

    #[test]
    fn word_only_matches_word_tokenize() {
        let out = run_pipeline(&config("word"), "The cat").unwrap();
        assert_eq!(out.as_slice(), ["the", "cat"]);
    }

    #[test]
    fn stop_then_stem() {
        let out = run_pipeline(&config("word,stop,stem"), "the caresses").unwrap();
        assert_eq!(out.as_slice(), ["caress"]);
        let out = run_pipeline(&config("word,stem"), "Running horses").unwrap();
        assert_eq!(out.as_slice(), ["run", "hors"]);
    }
}
