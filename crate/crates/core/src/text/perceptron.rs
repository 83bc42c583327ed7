//! Trainable averaged-perceptron tagger with greedy left-to-right decoding.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tagset::PosTag;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct PerceptronConfig {
    pub iterations: usize,
    pub seed: u64,
}

impl Default for PerceptronConfig {
    fn default() -> Self {
        Self { iterations: 5, seed: 42 }
    }
}

/// Averaged perceptron weights: feature -> tag -> weight.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PerceptronTagger {
    weights: HashMap<String, HashMap<PosTag, f64>>,
}

fn normalize_word(word: &str) -> String {
    if word.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        "!DIGITS".to_string()
    } else {
        word.to_lowercase()
    }
}

fn suffix(word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    chars[chars.len().saturating_sub(3)..].iter().collect()
}

fn features(words: &[String], i: usize, prev: &str, prev2: &str) -> Vec<String> {
    let at = |k: isize| -> &str {
        let j = i as isize + k;
        if j < 0 {
            if j == -1 {
                "-START-"
            } else {
                "-START2-"
            }
        } else if j as usize >= words.len() {
            if j as usize == words.len() {
                "-END-"
            } else {
                "-END2-"
            }
        } else {
            words[j as usize].as_str()
        }
    };
    let w = at(0);
    let first: String = w.chars().take(1).collect();
    vec![
        "bias".to_string(),
        format!("i suffix {}", suffix(w)),
        format!("i pref1 {first}"),
        format!("i-1 tag {prev}"),
        format!("i-2 tag {prev2}"),
        format!("i tag+i-2 tag {prev} {prev2}"),
        format!("i word {w}"),
        format!("i-1 tag+i word {prev} {w}"),
        format!("i-1 word {}", at(-1)),
        format!("i-1 suffix {}", suffix(at(-1))),
        format!("i-2 word {}", at(-2)),
        format!("i+1 word {}", at(1)),
        format!("i+1 suffix {}", suffix(at(1))),
        format!("i+2 word {}", at(2)),
    ]
}

impl PerceptronTagger {
    fn predict(&self, feats: &[String]) -> PosTag {
        let mut scores: BTreeMap<PosTag, f64> = BTreeMap::new();
        for f in feats {
            if let Some(ws) = self.weights.get(f) {
                for (tag, w) in ws {
                    *scores.entry(*tag).or_insert(0.0) += w;
                }
            }
        }
        // BTreeMap order makes ties resolve to the earliest tag
        let mut best: Option<(PosTag, f64)> = None;
        for (tag, score) in scores {
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((tag, score));
            }
        }
        best.map_or(PosTag::NN, |(t, _)| t)
    }

    pub fn tag_words(&self, surfaces: &[String]) -> Vec<PosTag> {
        let words: Vec<String> = surfaces.iter().map(|s| normalize_word(s)).collect();
        let mut prev = "-START-".to_string();
        let mut prev2 = "-START2-".to_string();
        let mut out = Vec::with_capacity(words.len());
        for i in 0..words.len() {
            let tag = self.predict(&features(&words, i, &prev, &prev2));
            out.push(tag);
            prev2 = std::mem::replace(&mut prev, tag.as_str().to_string());
        }
        out
    }

    /// Trains on `(words, tags)` pairs.
    pub fn train(corpus: &[(Vec<String>, Vec<PosTag>)], config: &PerceptronConfig) -> Result<PerceptronTagger> {
        if corpus.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        for (words, tags) in corpus {
            if words.len() != tags.len() {
                return Err(Error::InvalidAnnotation(format!("{} words but {} tags", words.len(), tags.len())));
            }
        }
        let mut model = PerceptronTagger::default();
        let mut totals: HashMap<(String, PosTag), f64> = HashMap::new();
        let mut stamps: HashMap<(String, PosTag), u64> = HashMap::new();
        let mut clock: u64 = 0;
        let mut order: Vec<usize> = (0..corpus.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

        for _ in 0..config.iterations.max(1) {
            for &s in &order {
                let (surfaces, gold) = &corpus[s];
                let words: Vec<String> = surfaces.iter().map(|w| normalize_word(w)).collect();
                let mut prev = "-START-".to_string();
                let mut prev2 = "-START2-".to_string();
                for (i, &gold_tag) in gold.iter().enumerate() {
                    let feats = features(&words, i, &prev, &prev2);
                    let guess = model.predict(&feats);
                    clock += 1;
                    if guess != gold_tag {
                        for f in &feats {
                            for (tag, delta) in [(gold_tag, 1.0), (guess, -1.0)] {
                                let key = (f.clone(), tag);
                                let w = model.weights.entry(f.clone()).or_default().entry(tag).or_insert(0.0);
                                let stamp = stamps.entry(key.clone()).or_insert(0);
                                *totals.entry(key).or_insert(0.0) += (clock - *stamp) as f64 * *w;
                                *stamp = clock;
                                *w += delta;
                            }
                        }
                    }
                    prev2 = std::mem::replace(&mut prev, gold_tag.as_str().to_string());
                }
            }
            order.shuffle(&mut rng);
        }

        clock += 1;
        for (feat, ws) in model.weights.iter_mut() {
            for (tag, w) in ws.iter_mut() {
                let key = (feat.clone(), *tag);
                let total = totals.get(&key).copied().unwrap_or(0.0)
                    + (clock - stamps.get(&key).copied().unwrap_or(0)) as f64 * *w;
                *w = total / clock as f64;
            }
            ws.retain(|_, w| *w != 0.0);
        }
        model.weights.retain(|_, ws| !ws.is_empty());
        Ok(model)
    }

    /// `feature<TAB>tag<TAB>weight` lines, sorted.
    pub fn to_text(&self) -> String {
        let mut lines: Vec<(&str, PosTag, f64)> =
            self.weights.iter().flat_map(|(f, ws)| ws.iter().map(move |(t, w)| (f.as_str(), *t, *w))).collect();
        lines.sort_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)));
        let mut out = String::new();
        for (f, t, w) in lines {
            writeln!(out, "{f}\t{t}\t{w}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<PerceptronTagger> {
        let mut weights: HashMap<String, HashMap<PosTag, f64>> = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.rsplitn(3, '\t');
            let (Some(w), Some(t), Some(f)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse { line: n + 1, message: "expected feature<TAB>tag<TAB>weight".into() });
            };
            let tag: PosTag = t.parse()?;
            let weight: f64 =
                w.parse().map_err(|_| Error::Parse { line: n + 1, message: format!("bad weight `{w}`") })?;
            weights.entry(f.to_string()).or_default().insert(tag, weight);
        }
        Ok(PerceptronTagger { weights })
    }

    pub fn load(path: &Path) -> Result<PerceptronTagger> {
        if !path.exists() {
            return Err(Error::ModelNotFound(path.to_path_buf()));
        }
        PerceptronTagger::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Reads a tagged corpus: one sentence per line, `word/TAG` tokens separated
/// by spaces. The tag follows the last slash.
pub fn parse_tagged_corpus(text: &str) -> Result<Vec<(Vec<String>, Vec<PosTag>)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = Vec::new();
        let mut tags = Vec::new();
        for item in line.split_whitespace() {
            let (w, t) = item
                .rsplit_once('/')
                .ok_or_else(|| Error::Parse { line: n + 1, message: format!("token `{item}` lacks a /TAG suffix") })?;
            words.push(w.to_string());
            tags.push(t.parse::<PosTag>()?);
        }
        out.push((words, tags));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentence(pairs: &[(&str, PosTag)]) -> (Vec<String>, Vec<PosTag>) {
        (pairs.iter().map(|p| p.0.to_string()).collect(), pairs.iter().map(|p| p.1).collect())
    }

    #[test]
    fn memorizes_one_sentence() {
        use PosTag::*;
        let s = sentence(&[("I", PRP), ("love", VBP), ("being", VBG), ("ignored", VBN), (".", Period)]);
        let model = PerceptronTagger::train(std::slice::from_ref(&s), &PerceptronConfig::default()).unwrap();
        assert_eq!(model.tag_words(&s.0), s.1);
    }

    #[test]
    fn empty_corpus_rejected() {
        assert!(matches!(PerceptronTagger::train(&[], &PerceptronConfig::default()), Err(Error::EmptyTrainingSet)));
    }

    #[test]
    fn training_is_deterministic() {
        let corpus = parse_tagged_corpus(
            "I/PRP love/VBP being/VBG ignored/VBN ./.\nOh/UH ,/, I/PRP love/VBP this/DT jacket/NN !/.\n\
             the/DT walls/NNS are/VBP realistic/JJ ./.",
        )
        .unwrap();
        let cfg = PerceptronConfig { iterations: 8, seed: 7 };
        let a = PerceptronTagger::train(&corpus, &cfg).unwrap().to_text();
        let b = PerceptronTagger::train(&corpus, &cfg).unwrap().to_text();
        assert_eq!(a, b);
    }

    #[test]
    fn text_format_round_trips() {
        let corpus = parse_tagged_corpus("this/DT jacket/NN").unwrap();
        let model = PerceptronTagger::train(&corpus, &PerceptronConfig::default()).unwrap();
        let reparsed = PerceptronTagger::parse(&model.to_text()).unwrap();
        assert_eq!(reparsed, model);
    }

    #[test]
    fn rejects_unknown_tags() {
        assert!(matches!(parse_tagged_corpus("dog/XX"), Err(Error::InvalidTag { .. })));
        assert!(matches!(PerceptronTagger::parse("bias\tXX\t1.0"), Err(Error::InvalidTag { .. })));
    }

    #[test]
    fn empty_model_falls_back_to_noun() {
        let model = PerceptronTagger::default();
        assert_eq!(model.tag_words(&["zzxqv".to_string()]), [PosTag::NN]);
    }

    #[test]
    fn missing_model_file() {
        let err = PerceptronTagger::load(Path::new("/nonexistent/tagger.txt")).unwrap_err();
        assert!(matches!(err, Error::ModelNotFound(_)));
    }
}
