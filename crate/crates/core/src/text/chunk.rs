//! Shallow chunking over POS tags, heuristic named entities, subject and
//! object spans, and main-verb selection.

use std::ops::{Range, RangeInclusive};

use super::lexical::CommonWords;
use super::tagset::PosTag;
use super::{question_shape, TaggedSentence, Token};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChunkKind {
    NounPhrase,
    GerundPhrase,
    InfinitivePhrase,
    NamedEntity,
    Subject,
    Object,
}

/// A typed, inclusive token span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chunk {
    pub kind: ChunkKind,
    pub start: usize,
    pub end: usize,
}

impl Chunk {
    pub fn new(kind: ChunkKind, start: usize, end: usize) -> Chunk {
        debug_assert!(start <= end);
        Chunk { kind, start, end }
    }

    pub fn span(&self) -> RangeInclusive<usize> {
        self.start..=self.end
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn with_kind(self, kind: ChunkKind) -> Chunk {
        Chunk { kind, ..self }
    }

    fn within(&self, range: &Range<usize>) -> bool {
        self.start >= range.start && self.end < range.end
    }
}

const SUBORDINATORS: &[&str] = &[
    "as", "than", "because", "while", "if", "although", "though", "since", "whereas", "unless", "until", "whether",
    "that",
];
const AUXILIARIES: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re", "'s", "have", "has", "had", "having", "'ve",
    "do", "does", "did",
];
const BE_FORMS: &[&str] = &["be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re", "'s"];

fn is_negation(t: &Token) -> bool {
    t.lower == "n't" || t.lower == "not"
}

fn is_auxiliary(t: &Token) -> bool {
    t.pos == PosTag::MD || (t.pos.is_verb() && AUXILIARIES.contains(&t.lower.as_str()))
}

/// Noun phrases: an optional determiner or possessive, adjectival
/// modifiers (adverbs allowed only in front of an adjective), then one or
/// more nouns. Returned left to right, non-overlapping.
pub fn noun_phrases(s: &TaggedSentence) -> Vec<Chunk> {
    let toks = &s.tokens;
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let mut j = i;
        if matches!(toks[j].pos, PosTag::DT | PosTag::PRPS | PosTag::PDT) {
            j += 1;
        }
        while let Some(t) = toks.get(j) {
            let modifier = t.pos.is_adjective()
                || t.pos == PosTag::CD
                || t.pos.is_adverb() && !is_negation(t) && adverb_leads_to_adjective(toks, j);
            if !modifier {
                break;
            }
            j += 1;
        }
        let head_start = j;
        while toks.get(j).is_some_and(|t| t.pos.is_noun()) {
            j += 1;
        }
        if j > head_start {
            out.push(Chunk::new(ChunkKind::NounPhrase, i, j - 1));
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

fn adverb_leads_to_adjective(toks: &[Token], mut j: usize) -> bool {
    while let Some(t) = toks.get(j) {
        if t.pos.is_adjective() {
            return true;
        }
        if !t.pos.is_adverb() {
            return false;
        }
        j += 1;
    }
    false
}

fn is_clause_boundary(t: &Token) -> bool {
    t.pos.is_punctuation()
        || t.pos == PosTag::CC
        || t.pos.is_finite_verb()
        || t.pos.is_wh()
        || (t.pos == PosTag::IN && SUBORDINATORS.contains(&t.lower.as_str()))
}

fn gerund_starts_at(toks: &[Token], i: usize) -> bool {
    if toks[i].pos != PosTag::VBG {
        return false;
    }
    // progressive verb groups ("is stalking") are not gerunds
    let mut j = i;
    while j > 0 {
        j -= 1;
        let t = &toks[j];
        if t.pos.is_adverb() || is_negation(t) {
            continue;
        }
        return !(t.pos.is_verb() && BE_FORMS.contains(&t.lower.as_str()));
    }
    true
}

fn infinitive_starts_at(toks: &[Token], i: usize) -> bool {
    if toks[i].pos != PosTag::TO {
        return false;
    }
    let mut j = i + 1;
    while toks.get(j).is_some_and(|t| t.pos.is_adverb()) {
        j += 1;
    }
    toks.get(j).is_some_and(|t| t.pos == PosTag::VB)
}

/// Gerund phrases (from a non-progressive VBG) and infinitive phrases (from
/// `to` + base verb), each extended over its complements up to the next
/// clause boundary: punctuation, a coordinating conjunction, a finite verb,
/// or a subordinating word.
pub fn gerund_and_infinitive_phrases(s: &TaggedSentence) -> Vec<Chunk> {
    let toks = &s.tokens;
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let kind = if gerund_starts_at(toks, i) {
            ChunkKind::GerundPhrase
        } else if infinitive_starts_at(toks, i) {
            ChunkKind::InfinitivePhrase
        } else {
            i += 1;
            continue;
        };
        let mut end = i;
        while toks.get(end + 1).is_some_and(|t| !is_clause_boundary(t)) {
            end += 1;
        }
        out.push(Chunk::new(kind, i, end));
        i = end + 1;
    }
    out
}

/// Named entities with the bundled common-word list.
pub fn named_entities(s: &TaggedSentence) -> Vec<Chunk> {
    named_entities_with(s, CommonWords::bundled())
}

/// Maximal runs of capitalized name tokens. A token qualifies when it is
/// capitalized and either tagged NNP/NNPS or, away from a sentence start, is
/// a noun or adjective outside the common-word list. A sentence-initial
/// token qualifies only when NNP-tagged or absent from the common-word list.
pub fn named_entities_with(s: &TaggedSentence, common: &CommonWords) -> Vec<Chunk> {
    let toks = &s.tokens;
    let mut initial = vec![false; toks.len()];
    for seg in s.segments() {
        if let Some(first) = (seg.start..seg.end).find(|&i| !toks[i].pos.is_punctuation()) {
            initial[first] = true;
        }
    }
    let qualifies = |i: usize| {
        let t = &toks[i];
        if !t.is_capitalized() || t.pos.is_punctuation() {
            return false;
        }
        if initial[i] {
            return t.pos.is_proper_noun() || (!common.contains(&t.lower) && !t.pos.is_pronoun());
        }
        t.pos.is_proper_noun()
            || ((t.pos.is_common_noun() || t.pos.is_adjective() || t.pos == PosTag::FW) && !common.contains(&t.lower))
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if qualifies(i) {
            let start = i;
            while i + 1 < toks.len() && qualifies(i + 1) && !initial[i + 1] {
                i += 1;
            }
            out.push(Chunk::new(ChunkKind::NamedEntity, start, i));
        }
        i += 1;
    }
    out
}

/// Nominal spans: noun phrases plus single pronouns, sorted by start.
pub fn nominals(s: &TaggedSentence) -> Vec<Chunk> {
    let mut out = noun_phrases(s);
    for t in &s.tokens {
        if t.pos.is_pronoun() {
            out.push(Chunk::new(ChunkKind::NounPhrase, t.index, t.index));
        }
    }
    out.sort_by_key(|c| (c.start, c.end));
    out
}

/// Subject: the rightmost noun phrase or pronoun wholly before the verb.
/// Object: the first noun phrase, gerund or infinitive phrase, or pronoun
/// after the verb. Both are searched within the verb's sentence.
pub fn subject_object(s: &TaggedSentence, verb_index: usize) -> Result<(Option<Chunk>, Option<Chunk>)> {
    let verb = s.tokens.get(verb_index).ok_or(Error::NotAVerb(verb_index))?;
    if !verb.pos.is_verb() {
        return Err(Error::NotAVerb(verb_index));
    }
    let seg = s.segment_of(verb_index);
    let nominals = nominals(s);
    let subject = nominals
        .iter()
        .filter(|c| c.within(&seg) && c.end < verb_index)
        .max_by_key(|c| (c.end, c.len()))
        .map(|c| c.with_kind(ChunkKind::Subject));
    let phrases = gerund_and_infinitive_phrases(s);
    let object = nominals
        .iter()
        .chain(phrases.iter())
        .filter(|c| c.within(&seg) && c.start > verb_index)
        .min_by_key(|c| (c.start, std::cmp::Reverse(c.len())))
        .map(|c| c.with_kind(ChunkKind::Object));
    Ok((subject, object))
}

/// True iff the text ends with `?` or opens with a wh-word or auxiliary.
pub fn is_interrogative(s: &TaggedSentence) -> bool {
    question_shape(&s.tokens)
}

/// [`is_interrogative`] restricted to one sentence of a multi-sentence text.
pub fn is_interrogative_segment(s: &TaggedSentence, segment: &Range<usize>) -> bool {
    question_shape(&s.tokens[segment.clone()])
}

/// The main verb group: `start` is its first finite verb, `pivot` the verb
/// carrying the meaning once auxiliaries are skipped ("has decided" pivots
/// on "decided").
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerbGroup {
    pub start: usize,
    pub pivot: usize,
}

/// First finite verb outside any gerund or infinitive phrase, leftmost wins.
/// A base-form verb opening a sentence (imperative, or a tweet with the
/// subject dropped) also counts as finite.
pub fn main_verb_group(s: &TaggedSentence) -> Option<VerbGroup> {
    let toks = &s.tokens;
    let phrases = gerund_and_infinitive_phrases(s);
    let segments = s.segments();
    let opens_segment = |i: usize| {
        let seg = segments.iter().find(|r| r.contains(&i)).cloned().unwrap_or(0..toks.len());
        toks[seg.start..i].iter().all(|t| t.pos.is_punctuation() || t.pos == PosTag::UH)
    };
    let start = (0..toks.len()).find(|&i| {
        let t = &toks[i];
        let finite = t.pos.is_finite_verb() || (t.pos == PosTag::VB && opens_segment(i));
        finite && !phrases.iter().any(|c| c.span().contains(&i))
    })?;
    Some(VerbGroup { start, pivot: resolve_pivot(s, start) })
}

fn resolve_pivot(s: &TaggedSentence, start: usize) -> usize {
    let toks = &s.tokens;
    if !is_auxiliary(&toks[start]) {
        return start;
    }
    let seg = s.segment_of(start);
    let mut last_aux = start;
    let mut j = start + 1;
    let mut inverted_subject = false;
    while j < seg.end {
        let t = &toks[j];
        if t.pos.is_adverb() || is_negation(t) {
            j += 1;
        } else if t.pos.is_pronoun() && !inverted_subject {
            inverted_subject = true;
            j += 1;
        } else if is_auxiliary(t) {
            last_aux = j;
            j += 1;
        } else if matches!(t.pos, PosTag::VB | PosTag::VBN | PosTag::VBG | PosTag::VBP | PosTag::VBD) {
            return j;
        } else {
            break;
        }
    }
    last_aux
}
