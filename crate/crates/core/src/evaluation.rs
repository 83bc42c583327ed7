//! Exact match and Dice, system and per-rule reports, baselines and k-fold
//! cross-validation.
//!
//! Metrics are computed per sentence and macro-averaged. `Outside` counts
//! as a single pseudo-element, so on sentences whose gold target is
//! `Outside` the two metrics coincide.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use once_cell::sync::Lazy;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::{integrate, IntegratorMode, TargetAnnotation};
use crate::rules::{self, calibrate_rule_weights, CandidateSet, RuleId};
use crate::sentiment::Lexicon;
use crate::statistical::{self, decompose, featurize, predict_word, FeatureVector, TrainConfig};
use crate::text::TaggedSentence;

/// A tagged sentence with its gold target.
pub type Labeled = (TaggedSentence, TargetAnnotation);

pub fn exact_match(pred: &TargetAnnotation, gold: &TargetAnnotation) -> bool {
    pred == gold
}

/// 2|P∩G| / (|P|+|G|), with `Outside` as one pseudo-element.
pub fn dice(pred: &TargetAnnotation, gold: &TargetAnnotation) -> f64 {
    match (pred, gold) {
        (TargetAnnotation::Outside, TargetAnnotation::Outside) => 1.0,
        (TargetAnnotation::Words(p), TargetAnnotation::Words(g)) => {
            2.0 * p.intersection(g).count() as f64 / (p.len() + g.len()) as f64
        }
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slice {
    Overall,
    Conditional,
    OutsideOnly,
}

/// Macro-averaged metrics; `None` when the slice is empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalReport {
    pub em: Option<f64>,
    pub dice: Option<f64>,
    pub n: usize,
    pub slice: Slice,
}

/// Scores aligned prediction/gold pairs.
pub fn evaluate_pairs<'a>(
    pairs: impl IntoIterator<Item = (&'a TargetAnnotation, &'a TargetAnnotation)>,
    slice: Slice,
) -> EvalReport {
    let (mut em, mut ds, mut n) = (0.0, 0.0, 0usize);
    for (p, g) in pairs {
        em += if exact_match(p, g) { 1.0 } else { 0.0 };
        ds += dice(p, g);
        n += 1;
    }
    let mean = |x: f64| (n > 0).then(|| x / n as f64);
    EvalReport { em: mean(em), dice: mean(ds), n, slice }
}

/// Runs `system` on every sentence in parallel and scores it overall.
pub fn evaluate_system<F>(system: F, corpus: &[Labeled]) -> EvalReport
where
    F: Fn(&TaggedSentence) -> TargetAnnotation + Sync,
{
    let preds: Vec<TargetAnnotation> = corpus.par_iter().map(|(s, _)| system(s)).collect();
    evaluate_pairs(preds.iter().zip(corpus.iter().map(|(_, g)| g)), Slice::Overall)
}

/// Scores only the sentences whose gold target is `Outside`.
pub fn outside_slice_report(preds: &[TargetAnnotation], golds: &[&TargetAnnotation]) -> EvalReport {
    evaluate_pairs(preds.iter().zip(golds.iter().copied()).filter(|(_, g)| g.is_outside()), Slice::OutsideOnly)
}

/// Which rule report becomes the rule weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMetric {
    #[default]
    OverallDice,
    OverallEM,
    ConditionalDice,
    ConditionalEM,
}

impl WeightMetric {
    pub fn pick(self, overall: &EvalReport, conditional: &EvalReport) -> f64 {
        let v = match self {
            WeightMetric::OverallDice => overall.dice,
            WeightMetric::OverallEM => overall.em,
            WeightMetric::ConditionalDice => conditional.dice,
            WeightMetric::ConditionalEM => conditional.em,
        };
        v.unwrap_or(0.0)
    }
}

/// Overall: NoMatch counts as an empty prediction, i.e. `Outside`.
/// Conditional: only sentences where the rule matched.
pub fn rule_report_from_outcomes(
    outcomes: &[Option<CandidateSet>],
    golds: &[&TargetAnnotation],
) -> (EvalReport, EvalReport) {
    let preds: Vec<TargetAnnotation> =
        outcomes.iter().map(|o| o.as_ref().map_or(TargetAnnotation::Outside, CandidateSet::to_annotation)).collect();
    let overall = evaluate_pairs(preds.iter().zip(golds.iter().copied()), Slice::Overall);
    let conditional = evaluate_pairs(
        preds.iter().zip(golds.iter().copied()).zip(outcomes).filter(|(_, o)| o.is_some()).map(|(pg, _)| pg),
        Slice::Conditional,
    );
    (overall, conditional)
}

pub fn rule_report(r: RuleId, corpus: &[Labeled], lex: &Lexicon) -> (EvalReport, EvalReport) {
    let outcomes: Vec<Option<CandidateSet>> = corpus.par_iter().map(|(s, _)| rules::apply_rule(r, s, lex)).collect();
    let golds: Vec<&TargetAnnotation> = corpus.iter().map(|(_, g)| g).collect();
    rule_report_from_outcomes(&outcomes, &golds)
}

static BUNDLED_STOPWORDS: Lazy<Stopwords> = Lazy::new(|| Stopwords::parse(include_str!("../data/stopwords.txt")));

/// Lowercase stopword list, one word per line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    pub fn bundled() -> &'static Stopwords {
        &BUNDLED_STOPWORDS
    }

    pub fn parse(text: &str) -> Stopwords {
        Stopwords(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn load(path: &Path) -> Result<Stopwords> {
        if !path.exists() {
            return Err(Error::ModelNotFound(path.to_path_buf()));
        }
        Ok(Stopwords::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }
}

/// Baseline 1: every alphabetic, non-stopword token with zero polarity.
pub fn baseline_objective_words(s: &TaggedSentence, lex: &Lexicon, stopwords: &Stopwords) -> TargetAnnotation {
    TargetAnnotation::from_indices(
        s.tokens
            .iter()
            .filter(|t| {
                t.is_alphabetic() && !stopwords.contains(&t.lower) && lex.word_polarity(&t.lower).value() == 0.0
            })
            .map(|t| t.index),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceConfig {
    pub iterations: usize,
    pub seed: u64,
}

impl Default for SequenceConfig {
    fn default() -> Self {
        SequenceConfig { iterations: 10, seed: 42 }
    }
}

const START: usize = 2;

/// Baseline 2: first-order averaged structured perceptron over 0/1 tags,
/// Viterbi decoding, same features as the statistical extractor.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SequenceLabeler {
    emission: BTreeMap<String, [f64; 2]>,
    /// Rows: previous tag 0, 1, start.
    transition: [[f64; 2]; 3],
}

impl SequenceLabeler {
    fn emission(&self, fv: &FeatureVector, tag: usize) -> f64 {
        fv.iter().filter_map(|(f, x)| self.emission.get(f).map(|w| w[tag] * x)).sum()
    }

    fn viterbi(&self, feats: &[FeatureVector]) -> Vec<usize> {
        if feats.is_empty() {
            return Vec::new();
        }
        let mut score = [[0.0; 2]; 1].to_vec();
        let mut back: Vec<[usize; 2]> = vec![[START; 2]];
        for (tag, cell) in score[0].iter_mut().enumerate() {
            *cell = self.transition[START][tag] + self.emission(&feats[0], tag);
        }
        for (i, fv) in feats.iter().enumerate().skip(1) {
            let mut row = [0.0; 2];
            let mut ptr = [0usize; 2];
            for tag in 0..2 {
                let e = self.emission(fv, tag);
                let (best_prev, best) = (0..2)
                    .map(|p| (p, score[i - 1][p] + self.transition[p][tag]))
                    .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
                row[tag] = best + e;
                ptr[tag] = best_prev;
            }
            score.push(row);
            back.push(ptr);
        }
        let last = feats.len() - 1;
        let mut tag = if score[last][1] > score[last][0] { 1 } else { 0 };
        let mut out = vec![0; feats.len()];
        for i in (0..feats.len()).rev() {
            out[i] = tag;
            if i > 0 {
                tag = back[i][tag];
            }
        }
        out
    }

    pub fn train(corpus: &[Labeled], lex: &Lexicon, config: &SequenceConfig) -> Result<SequenceLabeler> {
        if corpus.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        let data: Vec<(Vec<FeatureVector>, Vec<usize>)> = corpus
            .iter()
            .map(|(s, g)| {
                let feats = (0..s.len()).map(|i| featurize(s, i, lex)).collect();
                let gold = (0..s.len()).map(|i| usize::from(g.words().is_some_and(|w| w.contains(&i)))).collect();
                (feats, gold)
            })
            .collect();

        // averaged as w - u / c, where u accumulates c-scaled updates
        let mut model = SequenceLabeler::default();
        let mut acc = SequenceLabeler::default();
        let mut c = 1.0;
        let mut order: Vec<usize> = (0..data.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for _ in 0..config.iterations.max(1) {
            order.shuffle(&mut rng);
            for &k in &order {
                let (feats, gold) = &data[k];
                let guess = model.viterbi(feats);
                if guess != *gold {
                    for (tags, sign) in [(gold, 1.0), (&guess, -1.0)] {
                        let mut prev = START;
                        for (fv, &tag) in feats.iter().zip(tags) {
                            for (f, x) in fv {
                                model.emission.entry(f.clone()).or_default()[tag] += sign * x;
                                acc.emission.entry(f.clone()).or_default()[tag] += c * sign * x;
                            }
                            model.transition[prev][tag] += sign;
                            acc.transition[prev][tag] += c * sign;
                            prev = tag;
                        }
                    }
                }
                c += 1.0;
            }
        }
        for (f, w) in model.emission.iter_mut() {
            let u = acc.emission[f];
            for tag in 0..2 {
                w[tag] -= u[tag] / c;
            }
        }
        for p in 0..3 {
            for tag in 0..2 {
                model.transition[p][tag] -= acc.transition[p][tag] / c;
            }
        }
        Ok(model)
    }

    pub fn label(&self, s: &TaggedSentence, lex: &Lexicon) -> TargetAnnotation {
        let feats: Vec<FeatureVector> = (0..s.len()).map(|i| featurize(s, i, lex)).collect();
        TargetAnnotation::from_indices(
            self.viterbi(&feats).into_iter().enumerate().filter(|&(_, t)| t == 1).map(|(i, _)| i),
        )
    }
}

/// Trains Baseline 2 on `train` and labels `test`.
pub fn baseline_sequence_labeler(
    train: &[Labeled],
    test: &TaggedSentence,
    lex: &Lexicon,
    config: &SequenceConfig,
) -> Result<TargetAnnotation> {
    Ok(SequenceLabeler::train(train, lex, config)?.label(test, lex))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Granularity {
    /// Folds over individual word instances.
    WordInstance,
    /// Folds over whole sentences.
    Sentence,
}

/// Seeded assignment of instances to `k` folds: a shuffle, then round robin,
/// so fold sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    pub granularity: Granularity,
    assignment: Vec<usize>,
}

impl FoldPlan {
    pub fn new(n_instances: usize, k: usize, seed: u64, granularity: Granularity) -> Result<FoldPlan> {
        if k < 2 {
            return Err(Error::InvalidFoldPlan(format!("k must be at least 2, got {k}")));
        }
        if k > n_instances {
            return Err(Error::InvalidFoldPlan(format!("k = {k} exceeds {n_instances} instances")));
        }
        let mut ids: Vec<usize> = (0..n_instances).collect();
        ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut assignment = vec![0; n_instances];
        for (pos, id) in ids.into_iter().enumerate() {
            assignment[id] = pos % k;
        }
        Ok(FoldPlan { k, seed, granularity, assignment })
    }

    /// Instances are sentences, or tokens numbered sentence by sentence.
    pub fn for_corpus(corpus: &[Labeled], k: usize, seed: u64, granularity: Granularity) -> Result<FoldPlan> {
        let n = match granularity {
            Granularity::Sentence => corpus.len(),
            Granularity::WordInstance => corpus.iter().map(|(s, _)| s.len()).sum(),
        };
        FoldPlan::new(n, k, seed, granularity)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn fold_of(&self, id: usize) -> usize {
        self.assignment[id]
    }

    pub fn test_ids(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] == fold).collect()
    }

    pub fn train_ids(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i] != fold).collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }
}

/// What cross-validation trains in each fold.
#[derive(Debug, Clone)]
pub struct CvSettings {
    pub lexicon: Lexicon,
    pub train: TrainConfig,
    pub weight_metric: WeightMetric,
}

/// Held-out candidates of both extractors, one per sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct OutOfFold {
    pub rule: Vec<CandidateSet>,
    pub stat: Vec<CandidateSet>,
}

impl OutOfFold {
    pub fn predictions(&self, mode: IntegratorMode) -> Vec<TargetAnnotation> {
        self.rule.iter().zip(&self.stat).map(|(r, s)| integrate(r, s, mode)).collect()
    }
}

fn labeled_subset(corpus: &[Labeled], ids: &[usize]) -> Vec<Labeled> {
    ids.iter().map(|&i| corpus[i].clone()).collect()
}

/// Trains on k-1 folds and predicts the held-out one, for every fold.
///
/// With sentence folds, rule weights and the linear model are both fitted
/// on the training sentences. With word-instance folds, sentences are split
/// across folds, so rule weights are calibrated once on the whole corpus
/// and only the linear model is refitted per fold.
pub fn cross_validate_candidates(corpus: &[Labeled], plan: &FoldPlan, settings: &CvSettings) -> Result<OutOfFold> {
    let lex = &settings.lexicon;
    let instances: Vec<Vec<statistical::WordInstance>> =
        corpus.iter().enumerate().map(|(k, (s, g))| decompose(s, g, lex, k)).collect::<Result<_>>()?;
    match plan.granularity {
        Granularity::Sentence => {
            if plan.assignment.len() != corpus.len() {
                return Err(Error::InvalidFoldPlan("plan does not cover the corpus sentences".into()));
            }
            let per_fold: Vec<Vec<(usize, CandidateSet, CandidateSet)>> = (0..plan.k)
                .into_par_iter()
                .map(|f| {
                    let train_ids = plan.train_ids(f);
                    let train_set = labeled_subset(corpus, &train_ids);
                    let weights = calibrate_rule_weights(&train_set, lex, settings.weight_metric)?;
                    let xs: Vec<_> = train_ids.iter().flat_map(|&i| instances[i].iter().cloned()).collect();
                    let model = statistical::train(&xs, &settings.train)?;
                    Ok(plan
                        .test_ids(f)
                        .into_iter()
                        .map(|i| {
                            let s = &corpus[i].0;
                            let rule = rules::rule_based_candidates(s, lex, &weights);
                            let stat = statistical::extract_candidates(&model, s, lex);
                            (i, rule, stat)
                        })
                        .collect())
                })
                .collect::<Result<_>>()?;
            let mut rule = vec![CandidateSet::empty(); corpus.len()];
            let mut stat = vec![CandidateSet::empty(); corpus.len()];
            for (i, r, s) in per_fold.into_iter().flatten() {
                rule[i] = r;
                stat[i] = s;
            }
            Ok(OutOfFold { rule, stat })
        }
        Granularity::WordInstance => {
            let flat: Vec<&statistical::WordInstance> = instances.iter().flatten().collect();
            if plan.assignment.len() != flat.len() {
                return Err(Error::InvalidFoldPlan("plan does not cover the corpus word instances".into()));
            }
            let weights = calibrate_rule_weights(corpus, lex, settings.weight_metric)?;
            let per_fold: Vec<Vec<(usize, bool)>> = (0..plan.k)
                .into_par_iter()
                .map(|f| {
                    let xs: Vec<_> = plan.train_ids(f).into_iter().map(|i| flat[i].clone()).collect();
                    let model = statistical::train(&xs, &settings.train)?;
                    Ok(plan.test_ids(f).into_iter().map(|i| (i, predict_word(&model, &flat[i].features))).collect())
                })
                .collect::<Result<_>>()?;
            let mut predicted = vec![false; flat.len()];
            for (i, p) in per_fold.into_iter().flatten() {
                predicted[i] = p;
            }
            let mut positive: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); corpus.len()];
            for (x, p) in flat.iter().zip(predicted) {
                if p {
                    positive[x.sentence_id].insert(x.token_index);
                }
            }
            let stat = positive
                .into_iter()
                .map(|w| if w.is_empty() { CandidateSet::outside() } else { CandidateSet::from_indices(w) })
                .collect();
            let rule = corpus.par_iter().map(|(s, _)| rules::rule_based_candidates(s, lex, &weights)).collect();
            Ok(OutOfFold { rule, stat })
        }
    }
}

/// Cross-validated overall report for one integrator mode.
pub fn cross_validate(
    corpus: &[Labeled],
    plan: &FoldPlan,
    mode: IntegratorMode,
    settings: &CvSettings,
) -> Result<EvalReport> {
    let oof = cross_validate_candidates(corpus, plan, settings)?;
    let preds = oof.predictions(mode);
    Ok(evaluate_pairs(preds.iter().zip(corpus.iter().map(|(_, g)| g)), Slice::Overall))
}

/// Held-out Baseline 2 predictions over sentence folds.
pub fn cross_validate_sequence_labeler(
    corpus: &[Labeled],
    plan: &FoldPlan,
    lex: &Lexicon,
    config: &SequenceConfig,
) -> Result<Vec<TargetAnnotation>> {
    if plan.granularity != Granularity::Sentence || plan.assignment.len() != corpus.len() {
        return Err(Error::InvalidFoldPlan("sequence labeling needs a sentence-level plan".into()));
    }
    let per_fold: Vec<Vec<(usize, TargetAnnotation)>> = (0..plan.k)
        .into_par_iter()
        .map(|f| {
            let model = SequenceLabeler::train(&labeled_subset(corpus, &plan.train_ids(f)), lex, config)?;
            Ok(plan.test_ids(f).into_iter().map(|i| (i, model.label(&corpus[i].0, lex))).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = vec![TargetAnnotation::Outside; corpus.len()];
    for (i, t) in per_fold.into_iter().flatten() {
        out[i] = t;
    }
    Ok(out)
}

pub const BASELINE_1: &str = "Baseline 1: All Objective Words";
pub const BASELINE_2: &str = "Baseline 2: Seq. Labeling";

pub fn system_name(mode: IntegratorMode) -> &'static str {
    match mode {
        IntegratorMode::RuleOnly => "Only Rule-Based",
        IntegratorMode::StatOnly => "Only Statistical",
        IntegratorMode::HybridOr => "Hybrid OR",
        IntegratorMode::HybridAnd => "Hybrid AND",
    }
}

/// One system's predictions scored overall and on the `Outside` slice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemRow {
    pub system: String,
    pub overall: EvalReport,
    pub outside: EvalReport,
}

impl SystemRow {
    pub fn score(system: &str, preds: &[TargetAnnotation], golds: &[&TargetAnnotation]) -> SystemRow {
        SystemRow {
            system: system.to_string(),
            overall: evaluate_pairs(preds.iter().zip(golds.iter().copied()), Slice::Overall),
            outside: outside_slice_report(preds, golds),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleRow {
    pub rule: String,
    pub overall: EvalReport,
    pub conditional: EvalReport,
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{:.2}", 100.0 * x))
}

/// The system comparison followed by the `Outside`-case breakdown.
pub fn render_system_table(rows: &[SystemRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:<34}{:>8}{:>8}{:>6}", "Approach", "EM", "DS", "n").unwrap();
    for r in rows {
        writeln!(out, "{:<34}{:>8}{:>8}{:>6}", r.system, pct(r.overall.em), pct(r.overall.dice), r.overall.n).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "Outside cases").unwrap();
    writeln!(out, "{:<34}{:>8}{:>8}{:>6}", "Approach", "EM", "DS", "n").unwrap();
    for r in rows {
        writeln!(out, "{:<34}{:>8}{:>8}{:>6}", r.system, pct(r.outside.em), pct(r.outside.dice), r.outside.n).unwrap();
    }
    out
}

pub fn render_rule_table(rows: &[RuleRow]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<6}{:>12}{:>12}{:>16}{:>16}{:>9}",
        "Rule", "Overall EM", "Overall DS", "Conditional EM", "Conditional DS", "Matched"
    )
    .unwrap();
    for r in rows {
        writeln!(
            out,
            "{:<6}{:>12}{:>12}{:>16}{:>16}{:>9}",
            r.rule,
            pct(r.overall.em),
            pct(r.overall.dice),
            pct(r.conditional.em),
            pct(r.conditional.dice),
            r.conditional.n
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct Record<'a> {
    kind: &'a str,
    name: &'a str,
    slice: Slice,
    em: Option<f64>,
    dice: Option<f64>,
    n: usize,
}

fn record_line(out: &mut String, kind: &str, name: &str, r: &EvalReport) {
    let rec = Record { kind, name, slice: r.slice, em: r.em, dice: r.dice, n: r.n };
    writeln!(out, "{}", serde_json::to_string(&rec).expect("records serialize")).unwrap();
}

/// One JSON object per system and slice.
pub fn render_system_records(rows: &[SystemRow]) -> String {
    let mut out = String::new();
    for r in rows {
        record_line(&mut out, "system", &r.system, &r.overall);
        record_line(&mut out, "system", &r.system, &r.outside);
    }
    out
}

/// One JSON object per rule and slice.
pub fn render_rule_records(rows: &[RuleRow]) -> String {
    let mut out = String::new();
    for r in rows {
        record_line(&mut out, "rule", &r.rule, &r.overall);
        record_line(&mut out, "rule", &r.rule, &r.conditional);
    }
    out
}

pub fn rule_rows(corpus: &[Labeled], lex: &Lexicon) -> Vec<RuleRow> {
    RuleId::ALL
        .iter()
        .map(|&r| {
            let (overall, conditional) = rule_report(r, corpus, lex);
            RuleRow { rule: r.to_string(), overall, conditional }
        })
        .collect()
}
