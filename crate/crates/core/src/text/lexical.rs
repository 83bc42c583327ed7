//! Zero-setup tagger: a word lexicon, suffix guesses for unknown words, and a
//! single left-to-right pass of contextual disambiguation rules.

use std::collections::{HashMap, HashSet};

use once_cell::sync::Lazy;

use super::tagset::PosTag;
use super::tokenize::RawToken;
use crate::error::{Error, Result};

static BUNDLED_LEXICON: &str = include_str!("../../data/tagger_lexicon.tsv");
static BUNDLED_COMMON: &str = include_str!("../../data/common_words.txt");

static COMMON_WORDS: Lazy<CommonWords> = Lazy::new(|| CommonWords::parse(BUNDLED_COMMON));

/// Lowercase words that are ordinary vocabulary. A capitalized word at the
/// start of a sentence is only treated as a name when it is absent here.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CommonWords(HashSet<String>);

impl CommonWords {
    pub fn bundled() -> &'static CommonWords {
        &COMMON_WORDS
    }

    pub fn parse(text: &str) -> CommonWords {
        CommonWords(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn load(path: &std::path::Path) -> Result<CommonWords> {
        if !path.exists() {
            return Err(Error::ModelNotFound(path.to_path_buf()));
        }
        Ok(CommonWords::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(&normalize(word))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub(crate) fn normalize(word: &str) -> String {
    word.to_lowercase().replace('’', "'")
}

/// Lexicon and suffix rule tagger.
#[derive(Debug, Clone)]
pub struct LexicalTagger {
    lexicon: HashMap<String, Vec<PosTag>>,
    common: CommonWords,
}

static BUNDLED_TAGGER: Lazy<LexicalTagger> = Lazy::new(|| {
    LexicalTagger::parse(BUNDLED_LEXICON, CommonWords::bundled().clone())
        .expect("bundled tagger lexicon is well-formed")
});

const BE_FORMS: &[&str] = &["be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re"];
const HAVE_FORMS: &[&str] = &["have", "has", "had", "having", "'ve"];
const DO_FORMS: &[&str] = &["do", "does", "did"];
const SUBJECT_PRONOUNS_3SG: &[&str] = &["he", "she", "it", "this", "that", "what", "there", "here", "who"];

impl LexicalTagger {
    pub fn bundled() -> &'static LexicalTagger {
        &BUNDLED_TAGGER
    }

    /// Parses `word<TAB>TAG[ TAG...]` lines.
    pub fn parse(text: &str, common: CommonWords) -> Result<LexicalTagger> {
        let mut lexicon = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tags) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse { line: n + 1, message: "expected word<TAB>tags".into() })?;
            let tags = tags.split_whitespace().map(str::parse).collect::<Result<Vec<PosTag>>>()?;
            if tags.is_empty() {
                return Err(Error::Parse { line: n + 1, message: "no tags".into() });
            }
            lexicon.insert(normalize(word), tags);
        }
        Ok(LexicalTagger { lexicon, common })
    }

    pub fn common_words(&self) -> &CommonWords {
        &self.common
    }

    pub fn lookup(&self, word: &str) -> Option<&[PosTag]> {
        self.lexicon.get(&normalize(word)).map(Vec::as_slice)
    }

    pub fn tag(&self, tokens: &[RawToken]) -> Vec<PosTag> {
        let candidates: Vec<Vec<PosTag>> =
            tokens.iter().enumerate().map(|(i, t)| self.initial(tokens, i, &t.surface)).collect();
        let lowers: Vec<String> = tokens.iter().map(|t| normalize(&t.surface)).collect();
        let mut tags: Vec<PosTag> = Vec::with_capacity(tokens.len());
        for i in 0..tokens.len() {
            let tag =
                if candidates[i].len() == 1 { candidates[i][0] } else { disambiguate(&lowers, &tags, &candidates, i) };
            tags.push(tag);
        }
        tags
    }

    fn initial(&self, tokens: &[RawToken], i: usize, surface: &str) -> Vec<PosTag> {
        if let Some(tag) = punctuation_tag(surface) {
            return vec![tag];
        }
        if surface.chars().next().is_some_and(|c| c.is_ascii_digit())
            && surface.chars().all(|c| c.is_ascii_digit() || matches!(c, ',' | '.' | ':' | '/' | '-'))
        {
            return vec![PosTag::CD];
        }
        if surface.starts_with('@') {
            return vec![PosTag::NNP];
        }
        if surface.starts_with('#') || surface.starts_with("http") || surface.starts_with("www.") {
            return vec![PosTag::NN];
        }
        let capitalized = surface.chars().next().is_some_and(char::is_uppercase);
        let all_caps = surface.chars().filter(|c| c.is_alphabetic()).all(char::is_uppercase)
            && surface.chars().filter(|c| c.is_alphabetic()).count() > 1;
        let initial = is_sentence_initial(tokens, i);
        if let Some(tags) = self.lookup(surface) {
            if capitalized && !initial && !all_caps && tags.iter().all(|t| t.is_common_noun()) {
                return vec![if tags[0] == PosTag::NNS { PosTag::NNPS } else { PosTag::NNP }];
            }
            return tags.to_vec();
        }
        if capitalized && (!initial || !self.common.contains(surface)) {
            return vec![PosTag::NNP];
        }
        vec![guess_by_suffix(&normalize(surface))]
    }
}

fn punctuation_tag(surface: &str) -> Option<PosTag> {
    if surface.chars().any(char::is_alphanumeric) {
        return None;
    }
    let tag = match surface {
        "," => PosTag::Comma,
        ";" | ":" | "-" | "--" | "—" | "–" => PosTag::Colon,
        "(" | "[" | "{" => PosTag::LParen,
        ")" | "]" | "}" => PosTag::RParen,
        "``" | "“" | "‘" | "«" => PosTag::OpenQuote,
        "\"" | "'" | "''" | "”" | "’" | "»" => PosTag::CloseQuote,
        "#" => PosTag::Hash,
        "$" => PosTag::Dollar,
        s if s.chars().all(|c| matches!(c, '.' | '!' | '?' | '…')) => PosTag::Period,
        s if s.starts_with('\'') || s.starts_with('’') => return None,
        _ => PosTag::SYM,
    };
    Some(tag)
}

pub(crate) fn is_sentence_initial(tokens: &[RawToken], i: usize) -> bool {
    let mut j = i;
    while j > 0 {
        let prev = &tokens[j - 1].surface;
        match punctuation_tag(prev) {
            Some(PosTag::Period) => return true,
            Some(PosTag::OpenQuote | PosTag::LParen) => j -= 1,
            Some(PosTag::CloseQuote) if j == 1 => return true,
            _ => return false,
        }
    }
    true
}

fn guess_by_suffix(word: &str) -> PosTag {
    let n = word.chars().count();
    let ends = |s: &str| word.ends_with(s) && n > s.len() + 1;
    if ends("ing") {
        PosTag::VBG
    } else if ends("ed") {
        PosTag::VBN
    } else if ends("ly") {
        PosTag::RB
    } else if ["ous", "ful", "ive", "able", "ible", "ical", "less", "ish", "ic", "ary", "ent", "ant"]
        .iter()
        .any(|s| ends(s))
    {
        PosTag::JJ
    } else if ends("est") {
        PosTag::JJS
    } else if ["tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship", "hood"].iter().any(|s| ends(s)) {
        PosTag::NN
    } else if ends("s") && !word.ends_with("ss") && !word.ends_with("us") && !word.ends_with("is") {
        PosTag::NNS
    } else {
        PosTag::NN
    }
}

fn is_subject_like(tag: PosTag) -> bool {
    tag.is_noun() || matches!(tag, PosTag::PRP | PosTag::WP | PosTag::WDT | PosTag::EX)
}

/// Index of the first token before `i` that is not an adverb or negation.
fn skip_adverbs_back(lowers: &[String], tags: &[PosTag], i: usize) -> Option<usize> {
    let mut j = i;
    while j > 0 {
        j -= 1;
        if !(tags[j].is_adverb() || lowers[j] == "n't") {
            return Some(j);
        }
    }
    None
}

fn disambiguate(lowers: &[String], tags: &[PosTag], candidates: &[Vec<PosTag>], i: usize) -> PosTag {
    let cands = &candidates[i];
    let has = |t: PosTag| cands.contains(&t);
    let prev = i.checked_sub(1).map(|j| tags[j]);
    let at_start = prev.is_none_or(|p| p == PosTag::Period);
    let next = candidates.get(i + 1).map(|c| c[0]);
    let word = lowers[i].as_str();
    let before_adverbs = skip_adverbs_back(lowers, tags, i);
    let anchor = before_adverbs.map(|j| (lowers[j].as_str(), tags[j]));

    match word {
        "that" => {
            let determiner = next.is_some_and(|n| n.is_noun() || n.is_adjective())
                || at_start
                || next.is_some_and(|n| n.is_finite_verb()) && !prev.is_some_and(|p| p.is_noun());
            return if determiner {
                PosTag::DT
            } else if prev.is_some_and(|p| p.is_noun()) {
                PosTag::WDT
            } else {
                PosTag::IN
            };
        }
        "her" => {
            return if next.is_some_and(|n| n.is_noun() || n.is_adjective() || n == PosTag::JJ) {
                PosTag::PRPS
            } else {
                PosTag::PRP
            };
        }
        "like" => {
            // verbal after a pronoun or plural/proper subject, a modal, `to`,
            // or `do`; "a man like fish" and "it's not like" stay prepositional
            let Some((w, t)) = anchor else { return PosTag::IN };
            let negated = before_adverbs.is_some_and(|j| j + 1 < i);
            if negated && (BE_FORMS.contains(&w) || w == "'s") {
                return PosTag::IN;
            }
            if t == PosTag::MD || t == PosTag::TO || DO_FORMS.contains(&w) {
                return PosTag::VB;
            }
            let subject = matches!(t, PosTag::PRP | PosTag::WP | PosTag::EX | PosTag::NNS | PosTag::NNP | PosTag::NNPS);
            return if subject { PosTag::VBP } else { PosTag::IN };
        }
        "'s" => {
            return match prev {
                Some(PosTag::PRP | PosTag::DT | PosTag::WP | PosTag::EX | PosTag::WDT | PosTag::IN) => PosTag::VBZ,
                _ if i > 0 && SUBJECT_PRONOUNS_3SG.contains(&lowers[i - 1].as_str()) => PosTag::VBZ,
                _ => PosTag::POS,
            };
        }
        "more" | "most" | "less" | "least" => {
            let adverbial = next.is_some_and(|n| n.is_adjective() || n.is_adverb());
            return match (word, adverbial) {
                ("more", true) => PosTag::RBR,
                ("more", false) => PosTag::JJR,
                ("most", true) => PosTag::RBS,
                ("most", false) => PosTag::JJS,
                (_, _) => cands[0],
            };
        }
        "no" => {
            return if at_start && next.is_none_or(|n| n.is_punctuation()) { PosTag::UH } else { PosTag::DT };
        }
        "may" => return PosTag::MD,
        _ => {}
    }

    // particles after verbs
    if has(PosTag::RP) {
        return if prev.is_some_and(|p| p.is_verb()) { PosTag::RP } else { cands[1] };
    }

    let noun = cands.iter().copied().find(|t| t.is_common_noun());
    let verb = cands.iter().copied().find(|t| t.is_verb());

    if let (Some(noun), Some(_)) = (noun, verb) {
        let noun_context = prev.is_some_and(|p| {
            matches!(p, PosTag::DT | PosTag::PRPS | PosTag::POS | PosTag::CD | PosTag::WPS)
                || p.is_adjective()
                || (p == PosTag::IN && lowers[i - 1] != "like")
        });
        if noun_context {
            return noun;
        }
        if at_start {
            return if next.is_some_and(|n| n.is_finite_verb()) { noun } else { base_or(cands, PosTag::VB) };
        }
        // compound noun heads a clause: "cell phone has"
        if prev.is_some_and(|p| p.is_common_noun()) && next.is_some_and(|n| n.is_finite_verb()) {
            return noun;
        }
        if let Some((w, t)) = anchor {
            if t == PosTag::MD || t == PosTag::TO || DO_FORMS.contains(&w) {
                return base_or(cands, PosTag::VB);
            }
            if is_subject_like(t) {
                return verb_after_subject(cands, w);
            }
        }
        return cands[0];
    }

    if has(PosTag::VBN) || has(PosTag::VBD) {
        if let Some((w, _)) = anchor {
            let auxiliary = HAVE_FORMS.contains(&w) || BE_FORMS.contains(&w) || matches!(w, "get" | "got" | "'s");
            if auxiliary && has(PosTag::VBN) {
                return PosTag::VBN;
            }
        }
        if cands[0].is_adjective() {
            return cands[0];
        }
        if let Some((_, t)) = anchor {
            if is_subject_like(t) && has(PosTag::VBD) {
                return PosTag::VBD;
            }
        }
        return if has(PosTag::VBN) { PosTag::VBN } else { cands[0] };
    }

    if has(PosTag::VB) || has(PosTag::VBP) {
        if at_start {
            return base_or(cands, cands[0]);
        }
        if let Some((w, t)) = anchor {
            if t == PosTag::MD || t == PosTag::TO || DO_FORMS.contains(&w) || w == "let" {
                return base_or(cands, cands[0]);
            }
            if is_subject_like(t) {
                return verb_after_subject(cands, w);
            }
        }
        if prev.is_some_and(|p| p == PosTag::PRPS) && has(PosTag::JJ) {
            return PosTag::JJ;
        }
        return cands[0];
    }

    if let (true, Some(noun)) = (has(PosTag::VBG), noun) {
        return if prev.is_some_and(|p| matches!(p, PosTag::DT | PosTag::PRPS) || p.is_adjective()) {
            noun
        } else {
            PosTag::VBG
        };
    }

    if has(PosTag::JJ) && has(PosTag::RB) {
        return if next.is_some_and(|n| n.is_noun()) { PosTag::JJ } else { cands[0] };
    }

    cands[0]
}

fn base_or(cands: &[PosTag], fallback: PosTag) -> PosTag {
    if cands.contains(&PosTag::VB) {
        PosTag::VB
    } else {
        fallback
    }
}

fn verb_after_subject(cands: &[PosTag], subject: &str) -> PosTag {
    if cands.contains(&PosTag::VBZ) && SUBJECT_PRONOUNS_3SG.contains(&subject) {
        return PosTag::VBZ;
    }
    if cands.contains(&PosTag::VBP) {
        PosTag::VBP
    } else if cands.contains(&PosTag::VBD) {
        PosTag::VBD
    } else {
        cands.iter().copied().find(|t| t.is_verb()).unwrap_or(cands[0])
    }
}
