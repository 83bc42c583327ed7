//! Word polarity lookups over a pluggable lexicon.

use std::collections::HashMap;
use std::path::Path;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::text::TaggedSentence;

static BUNDLED: &str = include_str!("../data/sentiment_lexicon.tsv");
static BUNDLED_LEXICON: Lazy<Lexicon> =
    Lazy::new(|| Lexicon::parse(BUNDLED).expect("bundled sentiment lexicon is well-formed"));

/// A polarity in [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct PolarityScore(f64);

impl PolarityScore {
    pub const NEUTRAL: PolarityScore = PolarityScore(0.0);

    /// Clamps into [-1, 1]; NaN becomes neutral.
    pub fn new(value: f64) -> PolarityScore {
        if value.is_nan() {
            PolarityScore(0.0)
        } else {
            PolarityScore(value.clamp(-1.0, 1.0))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Lowercase word -> polarity. Absent words score 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    entries: HashMap<String, f64>,
    duplicates: usize,
}

impl Lexicon {
    pub fn bundled() -> &'static Lexicon {
        &BUNDLED_LEXICON
    }

    /// Parses `word<TAB>score` lines; `#` lines are comments. A repeated word
    /// keeps its last score and is counted in [`Lexicon::duplicates`].
    pub fn parse(text: &str) -> Result<Lexicon> {
        let mut lex = Lexicon::default();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, score) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse { line: line_no, message: "expected word<TAB>score".into() })?;
            let word = word.trim();
            if word.is_empty() {
                return Err(Error::Parse { line: line_no, message: "empty word".into() });
            }
            let value: f64 = score
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: line_no, message: format!("bad score `{}`", score.trim()) })?;
            if !(-1.0..=1.0).contains(&value) {
                return Err(Error::Range { line: line_no, value });
            }
            if lex.entries.insert(word.to_lowercase(), value).is_some() {
                lex.duplicates += 1;
            }
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Lexicon> {
        if !path.exists() {
            return Err(Error::ModelNotFound(path.to_path_buf()));
        }
        Lexicon::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, f64)>) -> Lexicon {
        Lexicon {
            entries: pairs.into_iter().map(|(w, s)| (w.to_lowercase(), s.clamp(-1.0, 1.0))).collect(),
            duplicates: 0,
        }
    }

    pub fn duplicates(&self) -> usize {
        self.duplicates
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn word_polarity(&self, word: &str) -> PolarityScore {
        let key = word.to_lowercase().replace('’', "'");
        PolarityScore(self.entries.get(&key).copied().unwrap_or(0.0))
    }

    /// Mean polarity of the previous, current and next word, with 0 for
    /// positions outside the sentence.
    pub fn trigram_polarity(&self, s: &TaggedSentence, i: usize) -> PolarityScore {
        let at =
            |j: Option<usize>| j.and_then(|j| s.tokens.get(j)).map_or(0.0, |t| self.word_polarity(&t.lower).value());
        PolarityScore::new((at(i.checked_sub(1)) + at(Some(i)) + at(Some(i + 1))) / 3.0)
    }

    /// Sum of absolute word polarities.
    pub fn polarity_strength<S: AsRef<str>>(&self, words: &[S]) -> f64 {
        words.iter().map(|w| self.word_polarity(w.as_ref()).value().abs()).sum()
    }

    /// Sum of signed word polarities.
    pub fn signed_polarity_sum<S: AsRef<str>>(&self, words: &[S]) -> f64 {
        words.iter().map(|w| self.word_polarity(w.as_ref()).value()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{analyze, TaggerModel};
    use proptest::prelude::*;

    fn lex() -> Lexicon {
        Lexicon::from_pairs([("love", 0.8), ("hate", -0.6)])
    }

    #[test]
    fn read_back_and_default() {
        let lex = Lexicon::parse("# comment\nlove\t0.8\n").unwrap();
        assert_eq!(lex.word_polarity("love").value(), 0.8);
        assert_eq!(lex.word_polarity("LOVE").value(), 0.8);
        assert_eq!(lex.word_polarity("zzxqv").value(), 0.0);
    }

    #[test]
    fn out_of_range_score() {
        assert!(matches!(Lexicon::parse("love\t1.5"), Err(Error::Range { line: 1, .. })));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(Lexicon::parse("ok\t0.1\nlove 0.8"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Lexicon::parse("love\tlots"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicates_last_wins() {
        let lex = Lexicon::parse("love\t0.8\nlove\t0.5\n").unwrap();
        assert_eq!(lex.word_polarity("love").value(), 0.5);
        assert_eq!(lex.duplicates(), 1);
    }

    #[test]
    fn bundled_signs() {
        let lex = Lexicon::bundled();
        assert!(lex.word_polarity("love").value() > 0.0);
        assert!(lex.word_polarity("hate").value() < 0.0);
        assert_eq!(lex.word_polarity("table").value(), 0.0);
        assert!(lex.len() > 500);
    }

    #[test]
    fn trigram_at_boundaries() {
        let s = analyze("love it so", &TaggerModel::bundled()).unwrap();
        let p = lex().trigram_polarity(&s, 0).value();
        assert!((p - 0.8 / 3.0).abs() < 1e-12);

        let s = analyze("love", &TaggerModel::bundled()).unwrap();
        assert!((lex().trigram_polarity(&s, 0).value() - 0.8 / 3.0).abs() < 1e-12);

        let s = analyze("the old table", &TaggerModel::bundled()).unwrap();
        assert_eq!(lex().trigram_polarity(&s, 1).value(), 0.0);
    }

    #[test]
    fn strength_conventions() {
        let lex = lex();
        assert_eq!(lex.polarity_strength::<&str>(&[]), 0.0);
        assert_eq!(lex.polarity_strength(&["love"]), 0.8);
        assert!((lex.polarity_strength(&["love", "hate"]) - 1.4).abs() < 1e-12);
        assert!((lex.signed_polarity_sum(&["love", "hate"]) - 0.2).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn polarity_is_case_insensitive(word in "[a-zA-Z]{1,8}") {
            let lex = Lexicon::bundled();
            prop_assert_eq!(lex.word_polarity(&word), lex.word_polarity(&word.to_lowercase()));
        }

        #[test]
        fn strength_is_additive(a in proptest::collection::vec("(love|hate|table|good|bad)", 0..6),
                                b in proptest::collection::vec("(love|hate|table|good|bad)", 0..6)) {
            let lex = Lexicon::bundled();
            let joined: Vec<&String> = a.iter().chain(b.iter()).collect();
            let whole = lex.polarity_strength(&joined);
            prop_assert!((whole - lex.polarity_strength(&a) - lex.polarity_strength(&b)).abs() < 1e-9);
        }

        #[test]
        fn trigram_in_range(text in "[a-z]{1,6}( [a-z]{1,6}){0,5}", scores in proptest::collection::vec(-1.0f64..=1.0, 6)) {
            let s = analyze(&text, &TaggerModel::bundled()).unwrap();
            let pairs: Vec<(&str, f64)> = s.tokens.iter().zip(&scores).map(|(t, &v)| (t.lower.as_str(), v)).collect();
            let lex = Lexicon::from_pairs(pairs);
            for i in 0..s.len() {
                let p = lex.trigram_polarity(&s, i).value();
                prop_assert!((-1.0..=1.0).contains(&p));
            }
        }
    }
}
