//! The nine-rule extractor and its weighted-majority combiner.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::evaluation::{self, WeightMetric};
use crate::pipeline::TargetAnnotation;
use crate::sentiment::Lexicon;
use crate::text::{
    gerund_and_infinitive_phrases, is_interrogative_segment, main_verb_group, named_entities, nominals, noun_phrases,
    subject_object, Chunk, PosTag, TaggedSentence, Token,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
}

impl RuleId {
    pub const ALL: [RuleId; 9] =
        [RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5, RuleId::R6, RuleId::R7, RuleId::R8, RuleId::R9];

    /// 1-based rule number.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn description(self) -> &'static str {
        match self {
            RuleId::R1 => "pronouns and pronominal adjectives",
            RuleId::R2 => "named entities",
            RuleId::R3 => "object of a sentiment-bearing verb",
            RuleId::R4 => "lower-sentiment side of a neutral verb",
            RuleId::R5 => "gerund and infinitive phrases",
            RuleId::R6 => "nouns after a positive adjective",
            RuleId::R7 => "subject of an interrogative",
            RuleId::R8 => "subjects of a simile",
            RuleId::R9 => "demonstrative noun phrases",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.number())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        s.strip_prefix('R')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|n| (1..=9).contains(n))
            .map(|n| RuleId::ALL[n - 1])
            .ok_or_else(|| Error::Parse { line: 0, message: format!("unknown rule `{s}`") })
    }
}

/// One extractor's proposal: token indices, or a vote for `Outside`. The
/// two are exclusive; an empty, non-outside set is a match with no words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSet {
    words: BTreeSet<usize>,
    outside: bool,
}

impl CandidateSet {
    pub fn empty() -> CandidateSet {
        CandidateSet::default()
    }

    pub fn outside() -> CandidateSet {
        CandidateSet { words: BTreeSet::new(), outside: true }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> CandidateSet {
        CandidateSet { words: indices.into_iter().collect(), outside: false }
    }

    pub fn words(&self) -> &BTreeSet<usize> {
        &self.words
    }

    pub fn is_outside_vote(&self) -> bool {
        self.outside
    }

    /// No words and no outside vote.
    pub fn is_empty(&self) -> bool {
        self.words.is_empty() && !self.outside
    }

    /// Words become a word target; an outside vote or no words become
    /// `Outside`.
    pub fn to_annotation(&self) -> TargetAnnotation {
        TargetAnnotation::from_indices(self.words.iter().copied())
    }
}

/// Per-rule weights in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleWeights([f64; 9]);

impl Default for RuleWeights {
    fn default() -> Self {
        RuleWeights([1.0; 9])
    }
}

impl RuleWeights {
    pub fn uniform(w: f64) -> RuleWeights {
        RuleWeights([w.clamp(0.0, 1.0); 9])
    }

    pub fn get(&self, r: RuleId) -> f64 {
        self.0[r as usize]
    }

    /// Values are clamped into [0, 1].
    pub fn set(&mut self, r: RuleId, w: f64) {
        self.0[r as usize] = if w.is_nan() { 0.0 } else { w.clamp(0.0, 1.0) };
    }

    /// Multiplies every weight by `c` without clamping; used to check that
    /// the combiner only depends on weight ratios.
    pub fn scaled(&self, c: f64) -> ScaledWeights {
        ScaledWeights(self.0.map(|w| w * c))
    }

    /// `R<k><TAB>weight` lines in rule order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in RuleId::ALL {
            writeln!(out, "{r}\t{}", self.get(r)).unwrap();
        }
        out
    }

    /// Rules missing from the file keep weight 1.
    pub fn parse(text: &str) -> Result<RuleWeights> {
        let mut weights = RuleWeights::default();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (r, w) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse { line: line_no, message: "expected R<k><TAB>weight".into() })?;
            let rule: RuleId = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: line_no, message: format!("unknown rule `{}`", r.trim()) })?;
            let value: f64 = w
                .trim()
                .parse()
                .map_err(|_| Error::Parse { line: line_no, message: format!("bad weight `{}`", w.trim()) })?;
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Range { line: line_no, value });
            }
            weights.0[rule as usize] = value;
        }
        Ok(weights)
    }

    pub fn load(path: &Path) -> Result<RuleWeights> {
        if !path.exists() {
            return Err(Error::ModelNotFound(path.to_path_buf()));
        }
        RuleWeights::parse(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// Non-negative weights without the [0, 1] bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledWeights([f64; 9]);

/// Anything that assigns a non-negative weight to each rule.
pub trait Weighting {
    fn weight(&self, r: RuleId) -> f64;
}

impl Weighting for RuleWeights {
    fn weight(&self, r: RuleId) -> f64 {
        self.get(r)
    }
}

impl Weighting for ScaledWeights {
    fn weight(&self, r: RuleId) -> f64 {
        self.0[r as usize]
    }
}

/// Applies one rule. `None` means the rule's trigger is absent (NoMatch),
/// which is distinct from a match with no words.
pub fn apply_rule(r: RuleId, s: &TaggedSentence, lex: &Lexicon) -> Option<CandidateSet> {
    match r {
        RuleId::R1 => pronouns(s),
        RuleId::R2 => entities(s),
        RuleId::R3 => sentiment_verb(s, lex),
        RuleId::R4 => neutral_verb(s, lex),
        RuleId::R5 => verbal_phrases(s),
        RuleId::R6 => positive_adjective_nouns(s, lex),
        RuleId::R7 => interrogative_subjects(s),
        RuleId::R8 => simile_subjects(s),
        RuleId::R9 => demonstratives(s),
    }
}

/// All nine rules, keyed in rule order.
pub fn apply_all(s: &TaggedSentence, lex: &Lexicon) -> BTreeMap<RuleId, Option<CandidateSet>> {
    RuleId::ALL.iter().map(|&r| (r, apply_rule(r, s, lex))).collect()
}

/// Summed weight per word, plus the summed weight of outside votes.
pub fn majority_scores(
    candidates: &BTreeMap<RuleId, CandidateSet>,
    weights: &impl Weighting,
) -> (BTreeMap<usize, f64>, f64) {
    let mut words: BTreeMap<usize, f64> = BTreeMap::new();
    let mut outside = 0.0;
    for (&r, c) in candidates {
        let w = weights.weight(r);
        if c.is_outside_vote() {
            outside += w;
        }
        for &i in c.words() {
            *words.entry(i).or_insert(0.0) += w;
        }
    }
    (words, outside)
}

/// Weighted majority with outside votes competing as a pseudo-word.
pub fn combine_weighted_majority(
    candidates: &BTreeMap<RuleId, CandidateSet>,
    weights: &impl Weighting,
) -> Result<CandidateSet> {
    combine_weighted_majority_with(candidates, weights, true)
}

/// Keeps the words with the maximum summed weight. With
/// `outside_competes`, outside votes are summed like a word and win only
/// with a strictly higher score; otherwise they count only when no rule
/// proposed a word.
pub fn combine_weighted_majority_with(
    candidates: &BTreeMap<RuleId, CandidateSet>,
    weights: &impl Weighting,
    outside_competes: bool,
) -> Result<CandidateSet> {
    if candidates.is_empty() {
        return Err(Error::NothingToCombine);
    }
    let (scores, outside) = majority_scores(candidates, weights);
    let any_outside = candidates.values().any(CandidateSet::is_outside_vote);
    if scores.is_empty() {
        return Ok(if any_outside { CandidateSet::outside() } else { CandidateSet::empty() });
    }
    let best = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
    if outside_competes && any_outside && outside > best {
        return Ok(CandidateSet::outside());
    }
    Ok(CandidateSet::from_indices(scores.iter().filter(|(_, &v)| v == best).map(|(&i, _)| i)))
}

/// Runs all rules and combines the matches; `Outside` when none match.
pub fn rule_based_candidates(s: &TaggedSentence, lex: &Lexicon, weights: &RuleWeights) -> CandidateSet {
    let matched: BTreeMap<RuleId, CandidateSet> =
        apply_all(s, lex).into_iter().filter_map(|(r, c)| c.map(|c| (r, c))).collect();
    combine_weighted_majority(&matched, weights).unwrap_or_else(|_| CandidateSet::outside())
}

/// Weight of each rule = its score alone on the corpus under `metric`.
/// Conditional metrics with no matching sentence give weight 0.
pub fn calibrate_rule_weights(
    corpus: &[(TaggedSentence, TargetAnnotation)],
    lex: &Lexicon,
    metric: WeightMetric,
) -> Result<RuleWeights> {
    if corpus.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let outcomes: Vec<BTreeMap<RuleId, Option<CandidateSet>>> = corpus.iter().map(|(s, _)| apply_all(s, lex)).collect();
    let golds: Vec<&TargetAnnotation> = corpus.iter().map(|(_, g)| g).collect();
    let mut weights = RuleWeights::default();
    for r in RuleId::ALL {
        let per_sentence: Vec<Option<CandidateSet>> = outcomes.iter().map(|o| o[&r].clone()).collect();
        let (overall, conditional) = evaluation::rule_report_from_outcomes(&per_sentence, &golds);
        weights.set(r, metric.pick(&overall, &conditional));
    }
    Ok(weights)
}

const DEMONSTRATIVES: &[&str] = &["this", "that", "these", "those"];

fn indices_of<'a>(chunks: impl IntoIterator<Item = &'a Chunk>) -> BTreeSet<usize> {
    chunks.into_iter().flat_map(|c| c.indices()).collect()
}

fn trigger(words: BTreeSet<usize>, fired: bool) -> Option<CandidateSet> {
    fired.then(|| CandidateSet::from_indices(words))
}

fn pronouns(s: &TaggedSentence) -> Option<CandidateSet> {
    let nps = noun_phrases(s);
    let mut words = BTreeSet::new();
    let mut fired = false;
    for t in &s.tokens {
        match t.pos {
            PosTag::PRP => {
                words.insert(t.index);
                fired = true;
            }
            PosTag::PRPS => {
                match nps.iter().find(|c| c.start == t.index) {
                    Some(np) => words.extend(np.indices()),
                    None => {
                        words.insert(t.index);
                    }
                }
                fired = true;
            }
            _ => {}
        }
    }
    trigger(words, fired)
}

fn entities(s: &TaggedSentence) -> Option<CandidateSet> {
    let ents = named_entities(s);
    trigger(indices_of(&ents), !ents.is_empty())
}

fn pivot_polarity(s: &TaggedSentence, lex: &Lexicon) -> Option<(usize, usize, f64)> {
    let g = main_verb_group(s)?;
    Some((g.start, g.pivot, lex.word_polarity(&s.tokens[g.pivot].lower).value()))
}

fn sentiment_verb(s: &TaggedSentence, lex: &Lexicon) -> Option<CandidateSet> {
    let (_, pivot, polarity) = pivot_polarity(s, lex)?;
    if polarity < 0.0 {
        return Some(CandidateSet::outside());
    }
    if polarity == 0.0 {
        return None;
    }
    let (_, object) = subject_object(s, pivot).ok()?;
    object.map(|o| CandidateSet::from_indices(o.indices()))
}

/// Drops punctuation at both ends of a token range.
fn trim_punctuation(toks: &[Token], mut r: Range<usize>) -> Range<usize> {
    while r.start < r.end && toks[r.start].pos.is_punctuation() {
        r.start += 1;
    }
    while r.end > r.start && toks[r.end - 1].pos.is_punctuation() {
        r.end -= 1;
    }
    r
}

fn neutral_verb(s: &TaggedSentence, lex: &Lexicon) -> Option<CandidateSet> {
    let (start, pivot, polarity) = pivot_polarity(s, lex)?;
    if polarity != 0.0 {
        return None;
    }
    let seg = s.segment_of(pivot);
    let left = trim_punctuation(&s.tokens, seg.start..start);
    let right = trim_punctuation(&s.tokens, pivot + 1..seg.end);
    if left.is_empty() || right.is_empty() {
        return None;
    }
    let strength = |r: &Range<usize>| {
        let words: Vec<&str> = s.tokens[r.clone()].iter().map(|t| t.lower.as_str()).collect();
        lex.polarity_strength(&words)
    };
    let side = if strength(&left) < strength(&right) { left } else { right };
    Some(CandidateSet::from_indices(side))
}

fn verbal_phrases(s: &TaggedSentence) -> Option<CandidateSet> {
    let phrases = gerund_and_infinitive_phrases(s);
    trigger(indices_of(&phrases), !phrases.is_empty())
}

fn positive_adjective_nouns(s: &TaggedSentence, lex: &Lexicon) -> Option<CandidateSet> {
    let toks = &s.tokens;
    let mut words = BTreeSet::new();
    for (i, t) in toks.iter().enumerate() {
        let is_head = t.pos.is_common_noun() && !toks.get(i + 1).is_some_and(|n| n.pos.is_common_noun());
        if !is_head {
            continue;
        }
        let window = toks[i.saturating_sub(3)..i]
            .iter()
            .rev()
            .take_while(|p| {
                p.pos.is_adjective()
                    || p.pos.is_adverb()
                    || p.pos.is_noun()
                    || matches!(p.pos, PosTag::DT | PosTag::CD | PosTag::PRPS)
            })
            .collect::<Vec<_>>();
        if window.iter().any(|p| p.pos.is_adjective() && lex.word_polarity(&p.lower).value() > 0.0) {
            words.insert(i);
        }
    }
    trigger(words.clone(), !words.is_empty())
}

fn opens_clause(t: &Token) -> bool {
    t.pos.is_punctuation() || t.pos.is_wh() || matches!(t.pos, PosTag::UH | PosTag::CC)
}

fn is_auxiliary(t: &Token) -> bool {
    const AUX: &[&str] =
        &["am", "is", "are", "was", "were", "'m", "'re", "'s", "have", "has", "had", "'ve", "do", "does", "did"];
    t.pos == PosTag::MD || (t.pos.is_verb() && AUX.contains(&t.lower.as_str()))
}

fn interrogative_subjects(s: &TaggedSentence) -> Option<CandidateSet> {
    let toks = &s.tokens;
    let nominals = nominals(s);
    let mut words = BTreeSet::new();
    let mut fired = false;
    for seg in s.segments() {
        if !is_interrogative_segment(s, &seg) {
            continue;
        }
        fired = true;
        let Some(v) = seg.clone().find(|&i| toks[i].pos.is_verb()) else { continue };
        let inverted = is_auxiliary(&toks[v]) && toks[seg.start..v].iter().all(opens_clause);
        let subject = if inverted {
            let next_verb = (v + 1..seg.end).find(|&i| toks[i].pos.is_verb()).unwrap_or(seg.end);
            nominals.iter().find(|c| c.start > v && c.end < next_verb)
        } else {
            nominals.iter().filter(|c| c.start >= seg.start && c.end < v).max_by_key(|c| c.end)
        };
        if let Some(c) = subject {
            words.extend(c.indices());
        }
    }
    trigger(words, fired)
}

/// Subject of the clause left of position `i`: the subject of the nearest
/// preceding verb in the same sentence, else the nearest nominal.
fn left_subject(s: &TaggedSentence, nominals: &[Chunk], seg: &Range<usize>, i: usize) -> Option<Chunk> {
    let verb = (seg.start..i).rev().find(|&j| s.tokens[j].pos.is_finite_verb());
    if let Some(v) = verb {
        if let Ok((Some(subj), _)) = subject_object(s, v) {
            return Some(subj);
        }
    }
    nominals.iter().filter(|c| c.start >= seg.start && c.end < i).max_by_key(|c| c.end).copied()
}

fn first_nominal_after(nominals: &[Chunk], seg: &Range<usize>, i: usize) -> Option<Chunk> {
    nominals.iter().find(|c| c.start > i && c.end < seg.end).copied()
}

fn simile_subjects(s: &TaggedSentence) -> Option<CandidateSet> {
    let toks = &s.tokens;
    let nominals = nominals(s);
    for (i, t) in toks.iter().enumerate() {
        let seg = s.segment_of(i);
        let (left, right_anchor) = if t.lower == "as" {
            if toks.get(i + 1).is_some_and(|n| n.lower == "if") {
                (left_subject(s, &nominals, &seg, i), i + 1)
            } else {
                let modified =
                    (i + 1..(i + 4).min(seg.end)).any(|j| toks[j].pos.is_adjective() || toks[j].pos.is_adverb());
                let Some(second) = (i + 2..seg.end).find(|&j| toks[j].lower == "as") else { continue };
                if !modified {
                    continue;
                }
                (left_subject(s, &nominals, &seg, i), second)
            }
        } else if t.lower == "like" && t.pos == PosTag::IN {
            let left = nominals.iter().filter(|c| c.start >= seg.start && c.end < i).max_by_key(|c| c.end).copied();
            (left, i)
        } else {
            continue;
        };
        let right = first_nominal_after(&nominals, &seg, right_anchor);
        return Some(CandidateSet::from_indices(left.iter().chain(right.iter()).flat_map(|c| c.indices())));
    }
    None
}

fn demonstratives(s: &TaggedSentence) -> Option<CandidateSet> {
    let toks = &s.tokens;
    let mut words = BTreeSet::new();
    for (i, t) in toks.iter().enumerate() {
        if t.pos != PosTag::DT || !DEMONSTRATIVES.contains(&t.lower.as_str()) {
            continue;
        }
        let mut j = i + 1;
        while toks.get(j).is_some_and(|n| n.pos.is_adjective() || n.pos.is_adverb()) {
            j += 1;
        }
        let head = j;
        while toks.get(j).is_some_and(|n| n.pos.is_noun()) {
            j += 1;
        }
        if j > head {
            words.extend(i..j);
        }
    }
    trigger(words.clone(), !words.is_empty())
}
