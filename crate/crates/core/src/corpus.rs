//! Annotated corpora: `id<TAB>text<TAB>target` records, gold resolution,
//! and dataset statistics.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::TargetAnnotation;
use crate::sentiment::Lexicon;
use crate::text::{analyze, tokenize, TaggedSentence, TaggerModel};

pub const OUTSIDE_MARKER: &str = "OUTSIDE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gold {
    Words(Vec<String>),
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub gold: Gold,
}

impl Document {
    pub fn target_field(&self) -> String {
        match &self.gold {
            Gold::Outside => OUTSIDE_MARKER.to_string(),
            Gold::Words(w) => w.join("|"),
        }
    }
}

/// Lowercased tokens of each gold word; a gold word such as "don't" spans
/// several tokens.
fn gold_pieces(word: &str) -> Result<Vec<String>> {
    Ok(tokenize(word)?.into_iter().map(|t| t.surface.to_lowercase().replace('’', "'")).collect())
}

/// Leftmost unclaimed occurrence of each gold piece in `lowers`.
fn resolve(lowers: &[String], gold: &Gold, line: usize) -> Result<TargetAnnotation> {
    let words = match gold {
        Gold::Outside => return Ok(TargetAnnotation::Outside),
        Gold::Words(w) => w,
    };
    let mut claimed: BTreeSet<usize> = BTreeSet::new();
    for word in words {
        for piece in gold_pieces(word).map_err(|_| Error::AnnotationMismatch { line, word: word.clone() })? {
            let i = (0..lowers.len())
                .find(|i| !claimed.contains(i) && lowers[*i] == piece)
                .ok_or_else(|| Error::AnnotationMismatch { line, word: word.clone() })?;
            claimed.insert(i);
        }
    }
    Ok(TargetAnnotation::from_indices(claimed))
}

/// Maps gold words to token indices of `s`, the tagged form of `d.text`.
pub fn resolve_gold_indices(d: &Document, s: &TaggedSentence) -> Result<TargetAnnotation> {
    let lowers: Vec<String> = s.tokens.iter().map(|t| t.lower.clone()).collect();
    resolve(&lowers, &d.gold, 0)
}

/// Tags every document and resolves its gold target. Errors name the
/// 1-based record position.
pub fn tag_corpus(docs: &[Document], tagger: &TaggerModel) -> Result<Vec<(TaggedSentence, TargetAnnotation)>> {
    docs.par_iter()
        .enumerate()
        .map(|(k, d)| {
            let s = analyze(&d.text, tagger)?;
            let lowers: Vec<String> = s.tokens.iter().map(|t| t.lower.clone()).collect();
            let gold = resolve(&lowers, &d.gold, k + 1)?;
            Ok((s, gold))
        })
        .collect()
}

/// Parses corpus records. Records with two fields get the id `line<N>`.
pub fn parse_corpus(text: &str) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').collect();
        let (id, body, target) = match fields.as_slice() {
            [id, body, target] => (id.trim().to_string(), *body, *target),
            [body, target] => (format!("line{line}"), *body, *target),
            _ => {
                return Err(Error::Parse { line, message: "expected id<TAB>text<TAB>target".into() });
            }
        };
        let target = target.trim();
        if id.is_empty() || body.trim().is_empty() || target.is_empty() {
            return Err(Error::Parse { line, message: "empty field".into() });
        }
        let gold = if target == OUTSIDE_MARKER {
            Gold::Outside
        } else {
            let words: Vec<String> = target.split('|').map(|w| w.trim().to_string()).collect();
            if words.iter().any(|w| w.is_empty() || w == OUTSIDE_MARKER) {
                return Err(Error::Parse { line, message: format!("bad target `{target}`") });
            }
            Gold::Words(words)
        };
        let lowers: Vec<String> = tokenize(body)
            .map_err(|_| Error::Parse { line, message: "empty text".into() })?
            .into_iter()
            .map(|t| t.surface.to_lowercase().replace('’', "'"))
            .collect();
        resolve(&lowers, &gold, line)?;
        docs.push(Document { id, text: body.to_string(), gold });
    }
    Ok(docs)
}

pub fn load_corpus(path: &Path) -> Result<Vec<Document>> {
    if !path.exists() {
        return Err(Error::ModelNotFound(path.to_path_buf()));
    }
    parse_corpus(&std::fs::read_to_string(path)?)
}

pub fn corpus_to_text(docs: &[Document]) -> String {
    let mut out = String::new();
    for d in docs {
        writeln!(out, "{}\t{}\t{}", d.id, d.text, d.target_field()).unwrap();
    }
    out
}

pub fn save_corpus(path: &Path, docs: &[Document]) -> Result<()> {
    std::fs::write(path, corpus_to_text(docs))?;
    Ok(())
}

/// Dataset statistics. Target length and target polarity average over
/// documents with a word target; `targeted` counts them and
/// `avg_target_length` is 0 when there are none.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub count: usize,
    pub avg_words: f64,
    pub vocabulary: usize,
    pub total_words: usize,
    pub targeted: usize,
    pub avg_target_length: f64,
    pub avg_target_polarity_strength: f64,
    pub avg_rest_polarity_strength: f64,
}

impl CorpusStats {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "Count\t{}", self.count).unwrap();
        writeln!(out, "Average #words\t{:.4}", self.avg_words).unwrap();
        writeln!(out, "Vocabulary\t{}", self.vocabulary).unwrap();
        writeln!(out, "Total words\t{}", self.total_words).unwrap();
        writeln!(out, "Documents with a word target\t{}", self.targeted).unwrap();
        writeln!(out, "Average length of sarcasm target\t{:.4}", self.avg_target_length).unwrap();
        writeln!(out, "Average polarity strength of sarcasm target\t{:.4}", self.avg_target_polarity_strength).unwrap();
        writeln!(
            out,
            "Average polarity strength of portion apart from sarcasm target\t{:.4}",
            self.avg_rest_polarity_strength
        )
        .unwrap();
        out
    }
}

/// Counts over word tokens (those with a letter or digit); polarity strengths are absolute sums per document,
/// then averaged. The rest of an `Outside` document is all of it.
pub fn corpus_stats(docs: &[Document], lex: &Lexicon) -> Result<CorpusStats> {
    if docs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut vocab: HashSet<String> = HashSet::new();
    let mut total_words = 0;
    let mut targeted = 0;
    let (mut target_len, mut target_pol, mut rest_pol) = (0usize, 0.0, 0.0);
    for (n, d) in docs.iter().enumerate() {
        let lowers: Vec<String> =
            tokenize(&d.text)?.into_iter().map(|t| t.surface.to_lowercase().replace('’', "'")).collect();
        let is_word = |i: usize| lowers[i].chars().any(char::is_alphanumeric);
        let words: Vec<usize> = (0..lowers.len()).filter(|&i| is_word(i)).collect();
        total_words += words.len();
        vocab.extend(words.iter().map(|&i| lowers[i].clone()));
        let target = resolve(&lowers, &d.gold, n + 1)?;
        let in_target = |i: usize| target.words().is_some_and(|w| w.contains(&i));
        let rest: Vec<&str> = words.iter().filter(|&&i| !in_target(i)).map(|&i| lowers[i].as_str()).collect();
        rest_pol += lex.polarity_strength(&rest);
        if let (Gold::Words(words), Some(idx)) = (&d.gold, target.words()) {
            targeted += 1;
            target_len += words.len();
            let tw: Vec<&str> = idx.iter().map(|&i| lowers[i].as_str()).collect();
            target_pol += lex.polarity_strength(&tw);
        }
    }
    let per_target = |x: f64| if targeted == 0 { 0.0 } else { x / targeted as f64 };
    Ok(CorpusStats {
        count: docs.len(),
        avg_words: total_words as f64 / docs.len() as f64,
        vocabulary: vocab.len(),
        total_words,
        targeted,
        avg_target_length: per_target(target_len as f64),
        avg_target_polarity_strength: per_target(target_pol),
        avg_rest_polarity_strength: rest_pol / docs.len() as f64,
    })
}
