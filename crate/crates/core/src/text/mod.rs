//! Linguistic substrate: tokens, tags, chunks.

mod chunk;
mod lexical;
mod perceptron;
mod tagset;
mod tokenize;

use std::ops::Range;
use std::path::Path;

pub use chunk::{
    gerund_and_infinitive_phrases, is_interrogative, is_interrogative_segment, main_verb_group, named_entities,
    named_entities_with, nominals, noun_phrases, subject_object, Chunk, ChunkKind, VerbGroup,
};
pub use lexical::{CommonWords, LexicalTagger};
pub use perceptron::{parse_tagged_corpus, PerceptronConfig, PerceptronTagger};
pub use tagset::PosTag;
pub use tokenize::{tokenize, RawToken};

use crate::error::{Error, Result};

/// A tagged token.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub index: usize,
    pub pos: PosTag,
    pub capital_count: usize,
    /// Byte offsets of `surface` in the sentence text.
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn is_alphabetic(&self) -> bool {
        self.surface.chars().any(char::is_alphabetic) && self.surface.chars().all(|c| c.is_alphabetic() || c == '-')
    }

    pub fn is_capitalized(&self) -> bool {
        self.surface.chars().next().is_some_and(char::is_uppercase)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaggedSentence {
    pub text: String,
    pub tokens: Vec<Token>,
    pub is_question: bool,
}

const QUESTION_OPENERS: &[&str] = &[
    "what", "who", "whom", "whose", "which", "when", "where", "why", "how", "do", "does", "did", "can", "could",
    "will", "would", "should", "is", "are", "was", "were",
];

impl TaggedSentence {
    pub fn new(text: &str, raw: Vec<RawToken>, tags: Vec<PosTag>) -> TaggedSentence {
        debug_assert_eq!(raw.len(), tags.len());
        let tokens: Vec<Token> = raw
            .into_iter()
            .zip(tags)
            .enumerate()
            .map(|(index, (r, pos))| Token {
                lower: lexical::normalize(&r.surface),
                capital_count: r.surface.chars().filter(|c| c.is_uppercase()).count(),
                surface: r.surface,
                index,
                pos,
                start: r.start,
                end: r.end,
            })
            .collect();
        let is_question = question_shape(&tokens);
        TaggedSentence { text: text.to_string(), tokens, is_question }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn surfaces(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    /// Token ranges of the sentences inside this text, split after
    /// sentence-final punctuation.
    pub fn segments(&self) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (i, t) in self.tokens.iter().enumerate() {
            if t.pos == PosTag::Period {
                out.push(start..i + 1);
                start = i + 1;
            }
        }
        if start < self.tokens.len() {
            // trailing closing quotes belong to the previous segment
            if self.tokens[start..].iter().all(|t| t.pos.is_punctuation()) && !out.is_empty() {
                out.last_mut().unwrap().end = self.tokens.len();
            } else {
                out.push(start..self.tokens.len());
            }
        }
        out
    }

    pub fn segment_of(&self, index: usize) -> Range<usize> {
        self.segments().into_iter().find(|r| r.contains(&index)).unwrap_or(0..self.tokens.len())
    }
}

pub(crate) fn question_shape(tokens: &[Token]) -> bool {
    let ends_with_question = tokens
        .iter()
        .rev()
        .find(|t| !matches!(t.pos, PosTag::CloseQuote | PosTag::RParen))
        .is_some_and(|t| t.surface.contains('?'));
    let opens_with_aux =
        tokens.iter().find(|t| !t.pos.is_punctuation()).is_some_and(|t| QUESTION_OPENERS.contains(&t.lower.as_str()));
    ends_with_question || opens_with_aux
}

/// Either tagger; both emit Penn Treebank tags.
#[derive(Debug, Clone)]
pub enum TaggerModel {
    Lexical(LexicalTagger),
    Perceptron(PerceptronTagger),
}

impl TaggerModel {
    pub fn bundled() -> TaggerModel {
        TaggerModel::Lexical(LexicalTagger::bundled().clone())
    }

    /// Loads a perceptron model file.
    pub fn load(path: &Path) -> Result<TaggerModel> {
        Ok(TaggerModel::Perceptron(PerceptronTagger::load(path)?))
    }

    fn tag(&self, tokens: &[RawToken]) -> Vec<PosTag> {
        match self {
            TaggerModel::Lexical(t) => t.tag(tokens),
            TaggerModel::Perceptron(p) => {
                let words: Vec<String> = tokens.iter().map(|t| t.surface.clone()).collect();
                p.tag_words(&words)
            }
        }
    }
}

/// Tags `tokens` that were produced from `text`.
pub fn pos_tag(text: &str, tokens: Vec<RawToken>, model: &TaggerModel) -> Result<TaggedSentence> {
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let tags = model.tag(&tokens);
    Ok(TaggedSentence::new(text, tokens, tags))
}

/// Tokenizes and tags in one step.
pub fn analyze(text: &str, model: &TaggerModel) -> Result<TaggedSentence> {
    pos_tag(text, tokenize(text)?, model)
}

/// Trains the perceptron tagger; see [`PerceptronTagger::train`].
pub fn train_tagger(corpus: &[(Vec<String>, Vec<PosTag>)], config: &PerceptronConfig) -> Result<TaggerModel> {
    Ok(TaggerModel::Perceptron(PerceptronTagger::train(corpus, config)?))
}
