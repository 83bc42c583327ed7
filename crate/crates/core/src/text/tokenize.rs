//! Treebank-style word tokenization.
//!
//! Punctuation is split off words, runs of sentence-final marks (`...`, `!!`,
//! `?!`) stay together, and clitics are split the way the Penn Treebank does
//! it: `don't` becomes `do` + `n't`, `you're` becomes `you` + `'re`. Every
//! token is a byte slice of the input, so the original text can always be
//! rebuilt from the token offsets.

use crate::error::{Error, Result};

/// A token before tagging: its surface form and byte offsets in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawToken {
    pub surface: String,
    pub start: usize,
    pub end: usize,
}

const CLITICS: &[&str] = &["'s", "'re", "'ve", "'ll", "'d", "'m"];
const ABBREVIATIONS: &[&str] =
    &["mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "vs.", "etc.", "e.g.", "i.e.", "jr.", "sr.", "inc."];

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

fn is_opening(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '{' | '“' | '‘' | '«')
}

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '}' | '”' | '’' | '»' | ',' | ';' | ':')
}

fn is_atomic(word: &str) -> bool {
    word.starts_with("http://")
        || word.starts_with("https://")
        || word.starts_with("www.")
        || (word.len() > 1 && (word.starts_with('@') || word.starts_with('#')))
}

/// Splits `text` into tokens.
pub fn tokenize(text: &str) -> Result<Vec<RawToken>> {
    if text.trim().is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out = Vec::new();
    let mut chunk_start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = chunk_start.take() {
                split_chunk(text, s, i, &mut out);
            }
        } else if chunk_start.is_none() {
            chunk_start = Some(i);
        }
    }
    if let Some(s) = chunk_start {
        split_chunk(text, s, text.len(), &mut out);
    }
    Ok(out)
}

fn push(text: &str, start: usize, end: usize, out: &mut Vec<RawToken>) {
    if start < end {
        out.push(RawToken { surface: text[start..end].to_string(), start, end });
    }
}

fn split_chunk(text: &str, start: usize, end: usize, out: &mut Vec<RawToken>) {
    let mut lo = start;
    let mut hi = end;

    // leading brackets and quotes
    let mut leading = Vec::new();
    while lo < hi {
        let c = text[lo..hi].chars().next().unwrap();
        let rest = &text[lo..hi];
        if is_opening(c) && !CLITICS.iter().any(|cl| rest.eq_ignore_ascii_case(cl)) {
            leading.push((lo, lo + c.len_utf8()));
            lo += c.len_utf8();
        } else {
            break;
        }
    }

    // trailing punctuation, innermost last
    let mut trailing = Vec::new();
    while lo < hi {
        let word = &text[lo..hi];
        if is_atomic(word) && !word.ends_with(|c: char| is_terminal(c) || is_closing(c)) {
            break;
        }
        if ABBREVIATIONS.iter().any(|a| word.eq_ignore_ascii_case(a)) {
            break;
        }
        let c = word.chars().next_back().unwrap();
        if is_terminal(c) {
            let mut run_start = hi;
            for (j, ch) in word.char_indices().rev() {
                if is_terminal(ch) {
                    run_start = lo + j;
                } else {
                    break;
                }
            }
            // keep the period of an internal-period abbreviation like "U.S."
            if run_start > lo && text[run_start..hi] == *"." && looks_like_initialism(&text[lo..hi]) {
                break;
            }
            trailing.push((run_start, hi));
            hi = run_start;
        } else if is_closing(c) {
            trailing.push((hi - c.len_utf8(), hi));
            hi -= c.len_utf8();
        } else {
            break;
        }
    }

    for (s, e) in leading {
        push(text, s, e, out);
    }
    if lo < hi {
        split_core(text, lo, hi, out);
    }
    for (s, e) in trailing.into_iter().rev() {
        push(text, s, e, out);
    }
}

fn looks_like_initialism(word: &str) -> bool {
    let letters = word.chars().filter(|c| c.is_alphabetic()).count();
    let periods = word.chars().filter(|&c| c == '.').count();
    periods >= 2 && letters == periods
}

/// Splits internal punctuation and clitics out of a word with no leading or
/// trailing punctuation.
fn split_core(text: &str, lo: usize, hi: usize, out: &mut Vec<RawToken>) {
    let word = &text[lo..hi];
    if is_atomic(word) {
        push(text, lo, hi, out);
        return;
    }
    let chars: Vec<(usize, char)> = word.char_indices().collect();
    let mut piece_start = 0;
    let mut k = 0;
    while k < chars.len() {
        let (off, c) = chars[k];
        let between_digits =
            k > 0 && k + 1 < chars.len() && chars[k - 1].1.is_ascii_digit() && chars[k + 1].1.is_ascii_digit();
        let splits = match c {
            '!' | '?' | ';' | '"' | '(' | ')' | '“' | '”' | '…' => true,
            ',' | ':' => !between_digits,
            '.' => k + 1 < chars.len() && chars[k + 1].1 == '.',
            _ => false,
        };
        if splits {
            split_clitics(text, lo + piece_start, lo + off, out);
            let mut run_end = k + 1;
            if is_terminal(c) {
                while run_end < chars.len() && is_terminal(chars[run_end].1) {
                    run_end += 1;
                }
            }
            let end_off = if run_end < chars.len() { chars[run_end].0 } else { word.len() };
            push(text, lo + off, lo + end_off, out);
            piece_start = end_off;
            k = run_end;
        } else {
            k += 1;
        }
    }
    split_clitics(text, lo + piece_start, hi, out);
}

fn split_clitics(text: &str, lo: usize, hi: usize, out: &mut Vec<RawToken>) {
    if lo >= hi {
        return;
    }
    let word = &text[lo..hi];
    let lower = word.to_lowercase().replace('’', "'");
    if lower.len() > 3 && lower.ends_with("n't") {
        // "n't" is three bytes in ASCII; with a curly apostrophe it is five
        let tail = if word.ends_with("n’t") || word.ends_with("N’T") { 5 } else { 3 };
        push(text, lo, hi - tail, out);
        push(text, hi - tail, hi, out);
        return;
    }
    for clitic in CLITICS {
        if lower.len() > clitic.len() && lower.ends_with(clitic) {
            let tail_chars = clitic.chars().count();
            let split_at = word.char_indices().rev().nth(tail_chars - 1).map(|(i, _)| i).unwrap();
            push(text, lo, lo + split_at, out);
            push(text, lo + split_at, hi, out);
            return;
        }
    }
    push(text, lo, hi, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(text: &str) -> Vec<String> {
        tokenize(text).unwrap().into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn splits_final_period() {
        assert_eq!(surfaces("I love being ignored."), ["I", "love", "being", "ignored", "."]);
    }

    #[test]
    fn splits_comma_and_exclamation() {
        assert_eq!(surfaces("Oh, I love this jacket!"), ["Oh", ",", "I", "love", "this", "jacket", "!"]);
    }

    #[test]
    fn single_token() {
        assert_eq!(surfaces("a"), ["a"]);
    }

    #[test]
    fn contractions() {
        assert_eq!(surfaces("don't"), ["do", "n't"]);
        assert_eq!(surfaces("Can't wait"), ["Ca", "n't", "wait"]);
        assert_eq!(surfaces("you're It's"), ["you", "'re", "It", "'s"]);
        assert_eq!(surfaces("it’s"), ["it", "’s"]);
    }

    #[test]
    fn ellipsis_and_runs() {
        assert_eq!(surfaces("a quick text .."), ["a", "quick", "text", ".."]);
        assert_eq!(surfaces("donut..lol"), ["donut", "..", "lol"]);
        assert_eq!(surfaces("What?!"), ["What", "?!"]);
    }

    #[test]
    fn keeps_hyphenated_words_and_handles() {
        assert_eq!(surfaces("Tooth-ache is fun @bob #fail"), ["Tooth-ache", "is", "fun", "@bob", "#fail"]);
        assert_eq!(surfaces("the U.S. team"), ["the", "U.S.", "team"]);
        assert_eq!(surfaces("(really)"), ["(", "really", ")"]);
        assert_eq!(surfaces("1,000 people"), ["1,000", "people"]);
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(tokenize("   \t"), Err(Error::EmptyInput)));
        assert!(matches!(tokenize(""), Err(Error::EmptyInput)));
    }

    #[test]
    fn offsets_slice_the_input() {
        let text = "Yeah, right!  I hate catching the bus on time anyway!";
        for t in tokenize(text).unwrap() {
            assert_eq!(&text[t.start..t.end], t.surface);
        }
    }
}
