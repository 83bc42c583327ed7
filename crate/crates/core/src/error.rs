use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty or whitespace-only")]
    EmptyInput,

    #[error("model file not found: {}", .0.display())]
    ModelNotFound(PathBuf),

    #[error("invalid POS tag `{tag}`")]
    InvalidTag { tag: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("score {value} at line {line} is outside [-1, 1]")]
    Range { line: usize, value: f64 },

    #[error("token {0} is not a verb")]
    NotAVerb(usize),

    #[error("no rule candidates to combine")]
    NothingToCombine,

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("invalid annotation: {0}")]
    InvalidAnnotation(String),

    #[error("annotation mismatch at line {line}: gold word `{word}` not found in text")]
    AnnotationMismatch { line: usize, word: String },

    #[error("invalid fold plan: {0}")]
    InvalidFoldPlan(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
