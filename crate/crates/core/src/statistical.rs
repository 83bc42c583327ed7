//! Word-level target classifier: one instance per token, sparse features,
//! a linear margin model.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pipeline::TargetAnnotation;
use crate::rules::CandidateSet;
use crate::sentiment::Lexicon;
use crate::text::TaggedSentence;

pub const MODEL_HEADER: &str = "sarct-model v1";
const BIAS_KEY: &str = "__bias__";

/// Sparse feature map, ordered by feature name.
pub type FeatureVector = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct WordInstance {
    pub sentence_id: usize,
    pub token_index: usize,
    pub features: FeatureVector,
    pub label: bool,
}

/// Features of token `i`: its lowercase form, its own and neighbouring
/// tags (BOS/EOS at the edges), word and trigram polarity, and the number
/// of uppercase letters.
pub fn featurize(s: &TaggedSentence, i: usize, lex: &Lexicon) -> FeatureVector {
    let t = &s.tokens[i];
    let tag_at = |j: Option<usize>, edge: &str| {
        j.and_then(|j| s.tokens.get(j)).map_or(edge.to_string(), |t| t.pos.as_str().to_string())
    };
    let mut fv = FeatureVector::new();
    fv.insert(format!("w={}", t.lower), 1.0);
    fv.insert(format!("pos={}", t.pos), 1.0);
    fv.insert(format!("prev_pos={}", tag_at(i.checked_sub(1), "BOS")), 1.0);
    fv.insert(format!("next_pos={}", tag_at(Some(i + 1), "EOS")), 1.0);
    fv.insert("word_pol".to_string(), lex.word_polarity(&t.lower).value());
    fv.insert("tri_pol".to_string(), lex.trigram_polarity(s, i).value());
    fv.insert("caps".to_string(), t.capital_count as f64);
    fv
}

/// One instance per token, labelled 1 iff the token is in the gold target.
pub fn decompose(
    s: &TaggedSentence,
    gold: &TargetAnnotation,
    lex: &Lexicon,
    sentence_id: usize,
) -> Result<Vec<WordInstance>> {
    if let Some(&bad) = gold.words().and_then(|w| w.iter().find(|&&i| i >= s.len())) {
        return Err(Error::InvalidAnnotation(format!("gold index {bad} outside a {}-token sentence", s.len())));
    }
    Ok((0..s.len())
        .map(|i| WordInstance {
            sentence_id,
            token_index: i,
            features: featurize(s, i, lex),
            label: gold.words().is_some_and(|w| w.contains(&i)),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub l2: f64,
    pub seed: u64,
    /// Loss weight of positive instances; `None` uses negatives / positives.
    pub positive_weight: Option<f64>,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig { epochs: 30, learning_rate: 0.1, l2: 1e-4, seed: 42, positive_weight: None }
    }
}

/// Linear model over a frozen feature dictionary. Features absent from the
/// dictionary contribute nothing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearModel {
    pub weights: BTreeMap<String, f64>,
    pub bias: f64,
    pub threshold: f64,
}

impl LinearModel {
    pub fn score(&self, fv: &FeatureVector) -> f64 {
        self.bias + fv.iter().filter_map(|(f, x)| self.weights.get(f).map(|w| w * x)).sum::<f64>()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{MODEL_HEADER}\n");
        for (f, w) in &self.weights {
            writeln!(out, "{f}\t{w}").unwrap();
        }
        writeln!(out, "{BIAS_KEY}\t{}", self.bias).unwrap();
        out
    }

    pub fn parse(text: &str) -> Result<LinearModel> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h.trim_end() == MODEL_HEADER => {}
            _ => return Err(Error::Parse { line: 1, message: format!("expected header `{MODEL_HEADER}`") }),
        }
        let mut model = LinearModel::default();
        for (n, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (f, w) = line
                .rsplit_once('\t')
                .ok_or_else(|| Error::Parse { line: n + 1, message: "expected feature<TAB>weight".into() })?;
            let w: f64 = w
                .parse()
                .ok()
                .filter(|w: &f64| w.is_finite())
                .ok_or_else(|| Error::Parse { line: n + 1, message: format!("bad weight `{w}`") })?;
            if f == BIAS_KEY {
                model.bias = w;
            } else {
                model.weights.insert(f.to_string(), w);
            }
        }
        Ok(model)
    }

    pub fn load(path: &Path) -> Result<LinearModel> {
        if !path.exists() {
            return Err(Error::ModelNotFound(path.to_path_buf()));
        }
        LinearModel::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Class-weighted hinge loss with L2, minimized by per-instance subgradient
/// steps over seeded shuffles.
pub fn train(instances: &[WordInstance], config: &TrainConfig) -> Result<LinearModel> {
    if instances.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let positives = instances.iter().filter(|x| x.label).count();
    let negatives = instances.len() - positives;
    let pos_weight = config.positive_weight.unwrap_or(if positives == 0 {
        1.0
    } else {
        (negatives as f64 / positives as f64).max(1.0)
    });

    let mut weights: BTreeMap<String, f64> =
        instances.iter().flat_map(|x| x.features.keys().map(|f| (f.clone(), 0.0))).collect();
    let mut bias = 0.0;
    let mut order: Vec<usize> = (0..instances.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let decay = 1.0 - config.learning_rate * config.l2;

    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for &k in &order {
            let x = &instances[k];
            let (y, c) = if x.label { (1.0, pos_weight) } else { (-1.0, 1.0) };
            let score = bias + x.features.iter().map(|(f, v)| weights[f] * v).sum::<f64>();
            if config.l2 > 0.0 {
                for f in x.features.keys() {
                    *weights.get_mut(f).unwrap() *= decay;
                }
            }
            if y * score < 1.0 {
                let step = config.learning_rate * c * y;
                for (f, v) in &x.features {
                    *weights.get_mut(f).unwrap() += step * v;
                }
                bias += step;
            }
        }
    }
    Ok(LinearModel { weights, bias, threshold: 0.0 })
}

/// 1 iff the score is strictly above the threshold.
pub fn predict_word(m: &LinearModel, fv: &FeatureVector) -> bool {
    m.score(fv) > m.threshold
}

/// Tokens predicted 1; an outside vote when there are none.
pub fn extract_candidates(m: &LinearModel, s: &TaggedSentence, lex: &Lexicon) -> CandidateSet {
    let words: Vec<usize> = (0..s.len()).filter(|&i| predict_word(m, &featurize(s, i, lex))).collect();
    if words.is_empty() {
        CandidateSet::outside()
    } else {
        CandidateSet::from_indices(words)
    }
}
