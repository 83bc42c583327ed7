//! The integrator: fuses rule-based and statistical candidates.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::rules::{rule_based_candidates, CandidateSet, RuleWeights};
use crate::sentiment::Lexicon;
use crate::statistical::{self, LinearModel};
use crate::text::{analyze, TaggedSentence, TaggerModel};

/// A target: a non-empty set of token indices, or `Outside`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TargetAnnotation {
    Words(BTreeSet<usize>),
    Outside,
}

impl TargetAnnotation {
    /// An empty index set becomes `Outside`.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> TargetAnnotation {
        let words: BTreeSet<usize> = indices.into_iter().collect();
        if words.is_empty() {
            TargetAnnotation::Outside
        } else {
            TargetAnnotation::Words(words)
        }
    }

    pub fn is_outside(&self) -> bool {
        matches!(self, TargetAnnotation::Outside)
    }

    pub fn words(&self) -> Option<&BTreeSet<usize>> {
        match self {
            TargetAnnotation::Words(w) => Some(w),
            TargetAnnotation::Outside => None,
        }
    }

    /// Surfaces joined by `sep`, or `OUTSIDE`.
    pub fn render(&self, s: &TaggedSentence, sep: &str) -> String {
        match self {
            TargetAnnotation::Outside => "OUTSIDE".to_string(),
            TargetAnnotation::Words(w) => w.iter().map(|&i| s.tokens[i].surface.as_str()).collect::<Vec<_>>().join(sep),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntegratorMode {
    RuleOnly,
    StatOnly,
    HybridOr,
    HybridAnd,
}

impl IntegratorMode {
    pub const ALL: [IntegratorMode; 4] =
        [IntegratorMode::RuleOnly, IntegratorMode::StatOnly, IntegratorMode::HybridOr, IntegratorMode::HybridAnd];

    pub fn as_str(self) -> &'static str {
        match self {
            IntegratorMode::RuleOnly => "rule-only",
            IntegratorMode::StatOnly => "stat-only",
            IntegratorMode::HybridOr => "hybrid-or",
            IntegratorMode::HybridAnd => "hybrid-and",
        }
    }
}

impl fmt::Display for IntegratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IntegratorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntegratorMode> {
        IntegratorMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Parse { line: 0, message: format!("unknown mode `{s}`") })
    }
}

/// Union or intersection of the word sets; outside votes contribute no
/// words. An empty result is `Outside`.
pub fn integrate(rule: &CandidateSet, stat: &CandidateSet, mode: IntegratorMode) -> TargetAnnotation {
    let (r, s) = (rule.words(), stat.words());
    match mode {
        IntegratorMode::RuleOnly => rule.to_annotation(),
        IntegratorMode::StatOnly => stat.to_annotation(),
        IntegratorMode::HybridOr => TargetAnnotation::from_indices(r.union(s).copied()),
        IntegratorMode::HybridAnd => TargetAnnotation::from_indices(r.intersection(s).copied()),
    }
}

static BUNDLED_WEIGHTS: &str = include_str!("../data/rule_weights.tsv");
static BUNDLED_MODEL: &str = include_str!("../data/linear_model.txt");
static BUNDLED_MODELS: Lazy<Models> = Lazy::new(|| Models {
    tagger: TaggerModel::bundled(),
    lexicon: Lexicon::bundled().clone(),
    weights: RuleWeights::parse(BUNDLED_WEIGHTS).expect("bundled rule weights are well-formed"),
    linear: LinearModel::parse(BUNDLED_MODEL).expect("bundled linear model is well-formed"),
});

/// Everything extraction needs.
#[derive(Debug, Clone)]
pub struct Models {
    pub tagger: TaggerModel,
    pub lexicon: Lexicon,
    pub weights: RuleWeights,
    pub linear: LinearModel,
}

impl Models {
    /// The shipped tagger and lexicon, with rule weights and a linear model
    /// fitted to the fixture corpus.
    pub fn bundled() -> &'static Models {
        &BUNDLED_MODELS
    }

    /// Reads `rule_weights.tsv` and `linear_model.txt` from `dir`; the
    /// tagger and lexicon are the bundled ones unless `dir` also holds
    /// `tagger.txt` or `lexicon.tsv`.
    pub fn load_dir(dir: &Path) -> Result<Models> {
        let tagger_path = dir.join("tagger.txt");
        let lexicon_path = dir.join("lexicon.tsv");
        Ok(Models {
            tagger: if tagger_path.exists() { TaggerModel::load(&tagger_path)? } else { TaggerModel::bundled() },
            lexicon: if lexicon_path.exists() { Lexicon::load(&lexicon_path)? } else { Lexicon::bundled().clone() },
            weights: RuleWeights::load(&dir.join("rule_weights.tsv"))?,
            linear: LinearModel::load(&dir.join("linear_model.txt"))?,
        })
    }
}

/// Both extractors' candidates for a tagged sentence.
pub fn candidates(s: &TaggedSentence, models: &Models) -> (CandidateSet, CandidateSet) {
    (
        rule_based_candidates(s, &models.lexicon, &models.weights),
        statistical::extract_candidates(&models.linear, s, &models.lexicon),
    )
}

pub fn extract_sentence(s: &TaggedSentence, models: &Models, mode: IntegratorMode) -> TargetAnnotation {
    let (rule, stat) = candidates(s, models);
    integrate(&rule, &stat, mode)
}

/// Tokenize, tag, run both extractors and integrate.
pub fn extract_target(text: &str, models: &Models, mode: IntegratorMode) -> Result<(TaggedSentence, TargetAnnotation)> {
    let s = analyze(text, &models.tagger)?;
    let target = extract_sentence(&s, models, mode);
    Ok((s, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn words(ix: &[usize]) -> CandidateSet {
        CandidateSet::from_indices(ix.iter().copied())
    }

    fn target(ix: &[usize]) -> TargetAnnotation {
        TargetAnnotation::from_indices(ix.iter().copied())
    }

    #[test]
    fn union_and_intersection() {
        assert_eq!(integrate(&words(&[0, 1]), &words(&[1, 2]), IntegratorMode::HybridOr), target(&[0, 1, 2]));
        assert_eq!(integrate(&words(&[0, 1]), &words(&[1, 2]), IntegratorMode::HybridAnd), target(&[1]));
        assert_eq!(integrate(&words(&[0]), &words(&[1]), IntegratorMode::HybridAnd), TargetAnnotation::Outside);
    }

    #[test]
    fn outside_votes() {
        let out = CandidateSet::outside();
        assert_eq!(integrate(&out, &out, IntegratorMode::HybridOr), TargetAnnotation::Outside);
        assert_eq!(integrate(&out, &words(&[3]), IntegratorMode::HybridOr), target(&[3]));
        assert_eq!(integrate(&out, &words(&[3]), IntegratorMode::HybridAnd), TargetAnnotation::Outside);
        assert_eq!(integrate(&out, &words(&[3]), IntegratorMode::RuleOnly), TargetAnnotation::Outside);
        assert_eq!(integrate(&CandidateSet::empty(), &out, IntegratorMode::StatOnly), TargetAnnotation::Outside);
    }

    #[test]
    fn mode_names() {
        for m in IntegratorMode::ALL {
            assert_eq!(m.as_str().parse::<IntegratorMode>().unwrap(), m);
        }
        assert!("hybrid-xor".parse::<IntegratorMode>().is_err());
    }

    #[test]
    fn bundled_extraction() {
        let m = Models::bundled();
        let (s, t) = extract_target("I love being ignored.", m, IntegratorMode::HybridOr).unwrap();
        assert_eq!(t.render(&s, " "), "being ignored");
        let (_, t) =
            extract_target("Yeah, right! I hate catching the bus on time anyway!", m, IntegratorMode::RuleOnly)
                .unwrap();
        assert_eq!(t, TargetAnnotation::Outside);
        assert!(matches!(extract_target("   ", m, IntegratorMode::HybridOr), Err(Error::EmptyInput)));
    }

    #[test]
    fn missing_model_dir() {
        let err = Models::load_dir(Path::new("/nonexistent/models")).unwrap_err();
        assert!(matches!(err, Error::ModelNotFound(_)));
    }

    fn arb_candidate() -> impl Strategy<Value = CandidateSet> {
        prop_oneof![
            1 => Just(CandidateSet::outside()),
            5 => proptest::collection::btree_set(0usize..8, 0..6).prop_map(CandidateSet::from_indices),
        ]
    }

    fn as_set(t: &TargetAnnotation) -> BTreeSet<usize> {
        t.words().cloned().unwrap_or_default()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn and_within_each_within_or(r in arb_candidate(), s in arb_candidate()) {
            let and = as_set(&integrate(&r, &s, IntegratorMode::HybridAnd));
            let or = as_set(&integrate(&r, &s, IntegratorMode::HybridOr));
            for c in [&r, &s] {
                prop_assert!(and.is_subset(c.words()));
                prop_assert!(c.words().is_subset(&or));
            }
            if !r.words().is_empty() || !s.words().is_empty() {
                prop_assert!(!integrate(&r, &s, IntegratorMode::HybridOr).is_outside());
            }
        }

        #[test]
        fn agreement_is_a_fixed_point(c in arb_candidate()) {
            let expected = c.to_annotation();
            for m in IntegratorMode::ALL {
                prop_assert_eq!(integrate(&c, &c, m), expected.clone());
            }
        }
    }
}
