use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::de::IgnoredAny;
use serde::Deserialize;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paragraph {
    pub id: String,
    pub context: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Question {
    pub id: String,
    pub text: String,
    pub paragraph_id: String,
}

/// One language's paragraphs and the questions asked about them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XquadSplit {
    pub language: String,
    pub paragraphs: Vec<Paragraph>,
    pub questions: Vec<Question>,
}

#[derive(Deserialize)]
struct RawFile {
    data: Vec<RawArticle>,
}

#[derive(Deserialize)]
struct RawArticle {
    paragraphs: Vec<RawParagraph>,
    qas: Option<IgnoredAny>,
}

#[derive(Deserialize)]
struct RawParagraph {
    context: String,
    qas: Vec<RawQa>,
}

#[derive(Deserialize)]
struct RawQa {
    id: String,
    question: String,
}

/// `xquad.<language>.json`
pub fn xquad_file_name(language: &str) -> String {
    format!("xquad.{language}.json")
}

/// Loads a SQuAD-schema file. The language is taken from a
/// `xquad.<lang>.json` file name, or is empty for other names.
pub fn load_xquad(path: impl AsRef<Path>) -> Result<XquadSplit> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io("XQuAD file", path, e))?;
    let language = path
        .file_name()
        .and_then(|n| n.to_str())
        .and_then(|n| n.strip_prefix("xquad.")?.strip_suffix(".json"))
        .unwrap_or_default();
    parse_xquad(&path.display().to_string(), &text, language)
}

/// Parses SQuAD v1.1 JSON. Paragraph ids are `<article>-<paragraph>`
/// positions; errors report the JSON path of the offending value.
pub fn parse_xquad(source_name: &str, json: &str, language: &str) -> Result<XquadSplit> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let raw: RawFile = serde_path_to_error::deserialize(de).map_err(|e| Error::Json {
        source_name: source_name.to_string(),
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    let json_err = |path: String, message: &str| Error::Json {
        source_name: source_name.to_string(),
        path,
        message: message.to_string(),
    };

    let mut paragraphs = Vec::new();
    let mut questions = Vec::new();
    let mut seen = HashSet::new();
    for (a, article) in raw.data.into_iter().enumerate() {
        if article.qas.is_some() {
            return Err(json_err(
                format!("data[{a}].qas"),
                "questions must sit inside a paragraph",
            ));
        }
        for (p, paragraph) in article.paragraphs.into_iter().enumerate() {
            let id = format!("{a}-{p}");
            for (q, qa) in paragraph.qas.into_iter().enumerate() {
                if !seen.insert(qa.id.clone()) {
                    return Err(json_err(
                        format!("data[{a}].paragraphs[{p}].qas[{q}].id"),
                        &format!("duplicate question id {:?}", qa.id),
                    ));
                }
                questions.push(Question {
                    id: qa.id,
                    text: qa.question,
                    paragraph_id: id.clone(),
                });
            }
            paragraphs.push(Paragraph {
                id,
                context: paragraph.context,
            });
        }
    }
    if paragraphs.is_empty() {
        return Err(json_err("data".into(), "file contains no paragraphs"));
    }
    Ok(XquadSplit {
        language: language.to_string(),
        paragraphs,
        questions,
    })
}
